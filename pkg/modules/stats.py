import time
from dataclasses import dataclass, field
from typing import Dict


@dataclass
class TimingStats:
    ledger_time: float = 0.0
    forcing_time: float = 0.0
    spectra_time: float = 0.0
    cover_time: float = 0.0
    dimension_time: float = 0.0
    total_time: float = 0.0

    def get_breakdown(self) -> Dict[str, float]:
        return {'ledger': self.ledger_time, 'forcing': self.forcing_time, 'spectra': self.spectra_time, 'cover': self.cover_time, 'dimension': self.dimension_time, 'total': self.total_time}

    def add(self, phase: str, seconds: float):
        attr = f'{phase}_time'
        if not hasattr(self, attr):
            raise KeyError(f'unknown phase {phase!r}')
        setattr(self, attr, getattr(self, attr) + seconds)


@dataclass
class RunStats:
    claims_proved: int = 0
    claims_refuted: int = 0
    claims_inconclusive: int = 0
    nodes_visited: int = 0
    windows_generated: int = 0
    windows_eliminated: int = 0
    start_time: float = field(default_factory=time.time)
    timing: TimingStats = field(default_factory=TimingStats)

    def record_verdict(self, status: str, nodes: int = 0):
        if status == 'Proved':
            self.claims_proved += 1
        elif status == 'Refuted':
            self.claims_refuted += 1
        else:
            self.claims_inconclusive += 1
        self.nodes_visited += nodes

    def claims_total(self) -> int:
        return self.claims_proved + self.claims_refuted + self.claims_inconclusive

    def elimination_ratio(self) -> float:
        if self.windows_generated > 0:
            return self.windows_eliminated / self.windows_generated
        return 0.0

    def elapsed_time(self) -> float:
        return time.time() - self.start_time

    def claims_per_second(self) -> float:
        elapsed = self.elapsed_time()
        return self.claims_total() / elapsed if elapsed > 0 else 0
