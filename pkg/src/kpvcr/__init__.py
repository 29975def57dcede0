"""Reconfiguration of k-path vertex covers on paths, cycles and trees."""

from .graph import (Graph, GraphError, GraphShape, ShapeKind, build_cycle, build_from_edges,
                    build_path, classify, dist, enumerate_k_paths, find_uncovered_path, is_kpvc,
                    psi_k_closed_form)
from .reconfig import (InvalidCoverError, Reason, ReconfSequence, Rule, RuleKind, SolveOutcome,
                       Step, Verdict, concat, reverse, tar_to_tj, tj_to_tar, verify)
from .oracle import (BudgetExceeded, ReconfGraph, build_reconf_graph, enumerate_covers,
                     oracle_min_cover_size, oracle_reachable, oracle_sequence)
from .tree import TreePartition, min_cover_tree, partition_tree, solve_tree_tar, solve_tree_tj
from .path import push, solve_path_tar, solve_path_tj, solve_path_ts
from .cycle import (Direction, cut_cycle, find_movable_token, detour_family, rotate, solve_cycle,
                    solve_cycle_tar)
from .reductions import (GadgetKind, NclGadget, PendantTransform, build_gadget,
                         gadget_reconf_graph, pendant_transform, valid_orientations)
from .instance import Instance, ParseError, emit_instance, parse_instance
