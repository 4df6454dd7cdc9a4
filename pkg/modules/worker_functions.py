import gc
import logging
import time
from typing import Tuple

from .forcing_engine import lookahead_check
from .gauss_dim import DimensionEstimate, build_subshift, dimension
from .intervals import set_precision
from .window_prover import INCONCLUSIVE, Verdict, prove_claim


def prove_claim_worker(args) -> Verdict:
    claim, worker_config = args
    set_precision(worker_config['precision'])
    try:
        return prove_claim(claim, worker_config.get('max_depth'), worker_config['tol'])
    except Exception as e:
        # a crashing claim is reported, never dropped
        logging.error(f'{claim.id}: worker failed: {e}')
        return Verdict(claim.id, INCONCLUSIVE, message=f'{type(e).__name__}: {e}')
    finally:
        gc.collect()


def lookahead_worker(args) -> bool:
    window, bounds, depth = args
    return lookahead_check((window, bounds, depth))


def dimension_worker(args) -> Tuple[str, DimensionEstimate, float]:
    entry, worker_config = args
    start_time = time.time()
    spec = build_subshift(entry['alphabet'], entry.get('forbidden', ()), entry.get('coding', 'fixed'), entry['name'])
    estimate = dimension(spec, worker_config['order'])
    return (entry['name'], estimate, time.time() - start_time)
