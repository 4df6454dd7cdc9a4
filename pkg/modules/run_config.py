import json
import os
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

from . import config
from .errors import ConfigError
from .intervals import decimal_fraction, set_precision

PRESETS_FILE = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'presets.json')

_DATA_FILES = (config.LEDGER_FILE, config.COVER_FILE, config.REGIONS_FILE, config.SUBSHIFT_FILE, config.BLOCK_FILE, config.CITED_FILE)


def load_presets(path: Optional[str] = None) -> dict:
    path = path or PRESETS_FILE
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f'cannot read presets from {path}: {e}')


@dataclass
class RunConfig:
    precision: int = config.PRECISION_BITS
    tol: Fraction = config.DEFAULT_TOL
    max_depth: int = config.DEFAULT_MAX_DEPTH
    lookahead: int = config.DEFAULT_LOOKAHEAD
    order: int = config.DEFAULT_ORDER
    jobs: Optional[int] = None
    data_dir: str = config.DATA_DIR
    out: Optional[str] = None

    @classmethod
    def from_preset(cls, name: str, presets_path: Optional[str] = None, **overrides) -> 'RunConfig':
        presets = load_presets(presets_path)
        if name not in presets:
            raise ConfigError(f'unknown preset {name!r} (available: {", ".join(sorted(presets))})')
        values = dict(presets[name])
        values.update({k: v for k, v in overrides.items() if v is not None})
        if isinstance(values.get('tol'), str):
            values['tol'] = decimal_fraction(values['tol'])
        return cls(**values)

    def path(self, filename: str) -> str:
        return os.path.join(self.data_dir, filename)

    def validate(self) -> 'RunConfig':
        if self.tol <= 0:
            raise ConfigError(f'tolerance must be positive, got {self.tol}')
        if self.precision < 32:
            raise ConfigError(f'precision of {self.precision} bits is too small (minimum 32)')
        if self.max_depth < 1 or self.order < 2 or self.lookahead < 0:
            raise ConfigError('max_depth must be >= 1, order >= 2 and lookahead >= 0')
        if self.jobs is not None and self.jobs < 1:
            raise ConfigError(f'jobs must be >= 1, got {self.jobs}')
        missing = [name for name in _DATA_FILES if not os.path.exists(self.path(name))]
        if missing:
            raise ConfigError(f'missing data files in {self.data_dir}: {", ".join(missing)}')
        return self

    def apply(self):
        set_precision(self.precision)

    def to_dict(self) -> dict:
        data = asdict(self)
        data['tol'] = f'{float(self.tol):.3e}'
        return data
