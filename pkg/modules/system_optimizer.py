import logging
import multiprocessing as mp
try:
    import psutil
    HAS_PSUTIL = True
except ImportError:
    HAS_PSUTIL = False
from .config import TASK_TYPES


class SystemOptimizer:

    def __init__(self):
        self.cpu_count = mp.cpu_count()
        self.physical_cores = self._physical_cores()
        self.ram_gb = self._get_total_ram()
        logging.debug(f'System: {self.cpu_count} logical CPUs, {self.physical_cores} physical, {self.ram_gb:.1f}GB RAM')

    def _get_total_ram(self) -> float:
        if HAS_PSUTIL:
            return psutil.virtual_memory().total / 1024 ** 3
        else:
            return 8.0

    def _physical_cores(self) -> int:
        if not HAS_PSUTIL:
            return self.cpu_count
        try:
            return psutil.cpu_count(logical=False) or self.cpu_count
        except Exception:
            return self.cpu_count

    def get_optimal_workers(self, task_type: str, items: int = 0) -> int:
        if task_type not in TASK_TYPES:
            raise ValueError(f'unknown task type {task_type!r}')
        if task_type == 'ledger':
            workers = self.physical_cores
        elif task_type == 'survivors':
            workers = max(1, self.physical_cores - 1)
        else:
            # pressure evaluations hold dense matrices
            workers = max(1, min(self.physical_cores, int(self.ram_gb // 2)))
        if items:
            workers = min(workers, items)
        return max(1, workers)
