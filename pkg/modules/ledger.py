"""The claim ledger: file format, runner and report."""
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from . import config
from .errors import LedgerFormatError, LiteralError
from .intervals import get_precision
from .stats import RunStats
from .window_prover import ALL_POSITIONS, INCONCLUSIVE, KINDS, PROVED, REFUTED, Claim, Verdict, WindowPattern


def parse_index_set(text: str, line_no: int = 0):
    text = text.strip()
    if not text or text == '-':
        return ((0, None),)
    if text == ALL_POSITIONS:
        return ALL_POSITIONS
    entries = []
    for part in text.split(','):
        part = part.strip()
        threshold = None
        if '>' in part:
            part, threshold = (s.strip() for s in part.split('>', 1))
        try:
            entries.append((int(part), threshold))
        except ValueError:
            raise LedgerFormatError(f'bad index {part!r}', line_no)
    return tuple(entries)


def format_index_set(index_set) -> str:
    if index_set == ALL_POSITIONS:
        return ALL_POSITIONS
    return ', '.join(str(i) if t is None else f'{i}>{t}' for i, t in index_set)


def parse_options(text: str, line_no: int = 0) -> Dict[str, str]:
    options = {}
    for token in text.split():
        if '=' not in token:
            raise LedgerFormatError(f'option {token!r} is not key=value', line_no)
        key, value = token.split('=', 1)
        options[key] = value
    return options


def parse_ledger(text: str) -> List[Claim]:
    claims = []
    seen = set()
    alphabet = config.DEFAULT_ALPHABET
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if line.startswith('@'):
            key, _, value = line[1:].partition(' ')
            if key != 'alphabet' or not value.strip().isdigit():
                raise LedgerFormatError(f'unknown directive {line!r}', line_no)
            alphabet = tuple(sorted(int(ch) for ch in value.strip()))
            continue
        cols = [c.strip() for c in line.split('|')]
        if len(cols) < 4 or len(cols) > 6:
            raise LedgerFormatError(f'expected 4 to 6 columns, found {len(cols)}', line_no)
        claim_id, pattern, kind, threshold = cols[:4]
        if claim_id in seen:
            raise LedgerFormatError(f'duplicate claim id {claim_id}', line_no)
        if kind.lower() not in KINDS:
            raise LedgerFormatError(f'unknown kind {kind!r}', line_no)
        index_set = parse_index_set(cols[4] if len(cols) > 4 else '', line_no)
        options = parse_options(cols[5], line_no) if len(cols) > 5 else {}
        try:
            window = WindowPattern.parse(pattern, alphabet)
            claim = Claim(
                claim_id, window, kind.lower(), threshold, index_set,
                int(options['depth']) if 'depth' in options else None,
                options.get('printed'),
                options.get('transpose', 'yes') != 'no',
            )
        except LiteralError as e:
            raise LedgerFormatError(f'{claim_id}: {e}', line_no)
        except (ValueError, ZeroDivisionError) as e:
            raise LedgerFormatError(f'{claim_id}: bad threshold {threshold!r} ({e})', line_no)
        seen.add(claim_id)
        claims.append(claim)
    return claims


def load_ledger(path: Optional[str] = None) -> List[Claim]:
    path = path or os.path.join(config.DATA_DIR, config.LEDGER_FILE)
    with open(path, 'r', encoding='utf-8') as f:
        claims = parse_ledger(f.read())
    logging.info(f'Ledger {os.path.basename(path)}: {len(claims)} claims')
    return claims


def with_transposes(claims: List[Claim]) -> List[Claim]:
    """Each claim followed by its transposed twin, unless marked ``transpose=no``."""
    out = []
    for claim in claims:
        out.append(claim)
        if claim.transposable:
            out.append(claim.transpose())
    return out


def claims_by_id(claims: List[Claim]) -> Dict[str, Claim]:
    return {c.id: c for c in claims}


@dataclass
class LedgerReport:
    verdicts: List[Verdict] = field(default_factory=list)
    printed: Dict[str, Optional[str]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v.status == PROVED for v in self.verdicts)

    def inconclusive_ids(self) -> List[str]:
        return [v.claim_id for v in self.verdicts if v.status == INCONCLUSIVE]

    def refuted_ids(self) -> List[str]:
        return [v.claim_id for v in self.verdicts if v.status == REFUTED]

    def proved_ids(self) -> List[str]:
        return [v.claim_id for v in self.verdicts if v.status == PROVED]

    def verdict(self, claim_id: str) -> Verdict:
        for v in self.verdicts:
            if v.claim_id == claim_id:
                return v
        raise KeyError(claim_id)

    def printed_mismatches(self) -> List[str]:
        out = []
        for v in self.verdicts:
            text = self.printed.get(v.claim_id)
            if text and v.bound is not None and v.status == PROVED and not v.bound.matches_printed(text):
                out.append(v.claim_id)
        return out

    def to_records(self, places: int = 15) -> List[dict]:
        records = []
        for v in self.verdicts:
            lo, hi = v.bound.to_decimal(places) if v.bound is not None else (None, None)
            record = {'id': v.claim_id, 'status': v.status, 'bound_lo': lo, 'bound_hi': hi, 'depth_used': v.depth_used}
            if v.status == REFUTED and v.witness is not None:
                record['witness'] = v.witness_literal()
            records.append(record)
        return records

    def to_json(self, places: int = 15) -> str:
        return json.dumps(self.to_records(places), indent=2)


def run_ledger(claims: List[Claim], jobs: int = 1, max_depth: Optional[int] = None, tol: Fraction = config.DEFAULT_TOL, stats: Optional[RunStats] = None) -> LedgerReport:
    from .worker_functions import prove_claim_worker
    report = LedgerReport(printed={c.id: c.printed for c in claims})
    if not claims:
        return report
    worker_config = {'max_depth': max_depth, 'tol': tol, 'precision': get_precision()}
    results: Dict[int, Verdict] = {}
    if jobs <= 1:
        for idx, claim in enumerate(claims):
            results[idx] = prove_claim_worker((claim, worker_config))
            logging.info(f'[{idx + 1}/{len(claims)}] {claim.id}: {results[idx].status}')
    else:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            futures = {executor.submit(prove_claim_worker, (claim, worker_config)): idx for idx, claim in enumerate(claims)}
            for done, future in enumerate(as_completed(futures), 1):
                idx = futures[future]
                results[idx] = future.result()
                logging.info(f'[{done}/{len(claims)}] {claims[idx].id}: {results[idx].status}')
    report.verdicts = [results[idx] for idx in range(len(claims))]
    if stats is not None:
        for v in report.verdicts:
            stats.record_verdict(v.status, v.nodes)
    for claim_id in report.inconclusive_ids():
        logging.warning(f'{claim_id}: inconclusive')
    for claim_id in report.refuted_ids():
        logging.error(f'{claim_id}: refuted')
    return report
