"""Verifier, pruned search and SAT bridge for K_{m,n} -> (K_{a,a}, K_{s,s})."""

from .constructions import NamedWitness, star_witness, witness_7_56, witness_8_44
from .core import (Coloring, ProblemSpec, VerifyReport, YSet, build_coloring, find_blue_K,
                   find_red_K, min_union, verify)
from .oracle import OracleResult, brute_force_arrow
from .satbridge import CnfDoc, SolverHarness, cegar, decode_model, encode_cnf
from .search import (DEFAULT_RULES, Budget, PruneRule, ScanResult, SearchOutcome, Status,
                     brm_scan, decide_arrow, rule_column_count, rule_max_degree,
                     rule_union_lookahead)

__version__ = "0.1.0"
