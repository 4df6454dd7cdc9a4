import gc
import logging
import os
try:
    import psutil
    HAS_PSUTIL = True
except ImportError:
    HAS_PSUTIL = False
from .config import DEFAULT_RAM_LIMIT_PERCENT, ESTIMATED_BYTES_PER_WINDOW, MEMORY_BUDGET_WINDOWS

_FALLBACK_FREE_BYTES = 4 * 1024 ** 3


class MemoryMonitor:
    """Sizes the live-window frontier of a survivor search against free memory."""

    def __init__(self, ram_limit_percent: int = DEFAULT_RAM_LIMIT_PERCENT, bytes_per_window: int = ESTIMATED_BYTES_PER_WINDOW):
        self.ram_limit_percent = ram_limit_percent
        self.bytes_per_window = bytes_per_window
        self.peak_windows = 0
        self.collections = 0
        self._process = psutil.Process(os.getpid()) if HAS_PSUTIL else None
        self._baseline = self.resident_bytes()

    def resident_bytes(self) -> int:
        if self._process is None:
            return 0
        return self._process.memory_info().rss

    def free_bytes(self) -> int:
        if not HAS_PSUTIL:
            logging.warning('psutil not available, assuming 4GB free for the window frontier')
            return _FALLBACK_FREE_BYTES
        vm = psutil.virtual_memory()
        allowed = vm.total * self.ram_limit_percent // 100 - (vm.total - vm.available)
        return max(0, allowed)

    def window_budget(self) -> int:
        by_ram = self.free_bytes() // self.bytes_per_window
        budget = max(1, min(MEMORY_BUDGET_WINDOWS, by_ram))
        logging.debug(f'Window budget: {budget} ({self.ram_limit_percent}% RAM limit)')
        return budget

    def observe_layer(self, live: int, budget: int) -> None:
        """Record a frontier size; collect garbage once it passes half the budget."""
        self.peak_windows = max(self.peak_windows, live)
        if live > budget // 2:
            gc.collect()
            self.collections += 1
            grown = (self.resident_bytes() - self._baseline) / 1024 ** 2
            logging.debug(f'GC at {live} live windows, process grew {grown:.0f}MB')
