from .config import *
from .errors import SpectraError, LiteralError, PartialSequenceError, ComparisonError, LedgerFormatError, ResourceBudgetError, VerificationError, ThresholdError, EmptySubshiftError, ConfigError
from .stats import TimingStats, RunStats
from .memory_monitor import MemoryMonitor
from .system_optimizer import SystemOptimizer
from .intervals import RInterval, set_precision, get_precision
from .surds import Surd, SurdSum
from .sequences import OneSidedSeq, BiSeq, parse_literal, format_literal
from .cf_core import continuant, K, eval_seq, lambda_at, markov_value, lagrange_value, compare_prefix, extremal_tail
from .window_prover import WindowPattern, Claim, Verdict, prove_claim
from .ledger import load_ledger, run_ledger, LedgerReport
from .forcing_engine import SurvivorSet, survivors, replicate_left, iterate_replication
from .spectra_sets import GapInterval, SymmetricBlockSpec, c_point, interval_J, upsilon, key_lemma_splice
from .cover_bounds import RatioFunc, CoverSystem, ratio_function, sup_ratio, case_sum, solve_threshold
from .gauss_dim import SubshiftSpec, build_subshift, pressure, dimension
from .run_config import RunConfig
from .report import Report, ReportEntry, lint_report
__version__ = '1.0.0'
__all__ = ['SpectraError', 'LiteralError', 'PartialSequenceError', 'ComparisonError', 'LedgerFormatError', 'ResourceBudgetError', 'VerificationError', 'ThresholdError', 'EmptySubshiftError', 'ConfigError', 'TimingStats', 'RunStats', 'MemoryMonitor', 'SystemOptimizer', 'RInterval', 'set_precision', 'get_precision', 'Surd', 'SurdSum', 'OneSidedSeq', 'BiSeq', 'parse_literal', 'format_literal', 'continuant', 'K', 'eval_seq', 'lambda_at', 'markov_value', 'lagrange_value', 'compare_prefix', 'extremal_tail', 'WindowPattern', 'Claim', 'Verdict', 'prove_claim', 'load_ledger', 'run_ledger', 'LedgerReport', 'SurvivorSet', 'survivors', 'replicate_left', 'iterate_replication', 'GapInterval', 'SymmetricBlockSpec', 'c_point', 'interval_J', 'upsilon', 'key_lemma_splice', 'RatioFunc', 'CoverSystem', 'ratio_function', 'sup_ratio', 'case_sum', 'solve_threshold', 'SubshiftSpec', 'build_subshift', 'pressure', 'dimension', 'RunConfig', 'Report', 'ReportEntry', 'lint_report', 'PRECISION_BITS', 'DEFAULT_TOL', 'DEFAULT_ALPHABET', 'DEFAULT_ORDER']
