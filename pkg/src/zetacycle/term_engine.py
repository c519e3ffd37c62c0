"""Per-zero terms li(n**rho_k) and their running sums.

Terms may be computed by a process pool, but they are always returned in
zero order and accumulated sequentially with Neumaier compensation. Output is
therefore bit-identical for any worker count.
"""

import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NumericError, TermComputationError
from .special_functions import ei

DEFAULT_STRIDE = 1000
CSV_COLUMNS = ("index", "gamma", "re_term", "im_term", "cum_re", "cum_im")
COMPONENTS = ("re", "im", "both")


@dataclass(frozen=True, eq=False)
class TermSeries:
    n: int
    start_index: int
    terms: np.ndarray = field(repr=False)
    cum_re: np.ndarray = field(repr=False)
    cum_im: np.ndarray = field(repr=False)
    checkpoint_stride: int
    checkpoints: list = field(repr=False)
    gammas: np.ndarray = field(default=None, repr=False)

    def __len__(self):
        return self.terms.size

    @property
    def indices(self):
        return np.arange(self.start_index, self.start_index + len(self))


def _terms_chunk(args):
    gammas, start_index, log_n = args
    out = np.empty(len(gammas), dtype=complex)
    for i, g in enumerate(gammas):
        try:
            out[i] = ei(complex(0.5, g) * log_n).value
        except (NumericError, DomainError) as exc:
            raise TermComputationError(start_index + i, exc) from exc
    return out


def compute_terms(catalog, n, jobs=1, chunk_size=2000):
    """li(n**rho_k) for rho_k = 1/2 + i gamma_k, in catalog order.

    With ``jobs > 1`` chunks are evaluated in worker processes; ``map``
    keeps them in order.
    """
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    log_n = math.log(n)
    gammas = [float(g) for g in catalog.gammas]
    chunks = [
        (gammas[i:i + chunk_size], catalog.start_index + i, log_n)
        for i in range(0, len(gammas), chunk_size)
    ]
    if not chunks:
        return np.empty(0, dtype=complex)
    if jobs == 1 or len(chunks) == 1:
        parts = [_terms_chunk(c) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_terms_chunk, chunks))
    return np.concatenate(parts)


def pair_conjugates(terms):
    """Add each term to the term of the conjugate zero: 2 Re t, Im 0."""
    terms = np.asarray(terms, dtype=complex)
    return (2.0 * terms.real).astype(complex)


class NeumaierSum:
    """Running float sum with a compensation term."""

    __slots__ = ("total", "compensation")

    def __init__(self):
        self.total = 0.0
        self.compensation = 0.0

    def add(self, x):
        t = self.total + x
        if abs(self.total) >= abs(x):
            self.compensation += (self.total - t) + x
        else:
            self.compensation += (x - t) + self.total
        self.total = t
        return self.total + self.compensation

    @property
    def value(self):
        return self.total + self.compensation


def prefix_sums(values):
    """Compensated prefix sums in strict index order."""
    acc = NeumaierSum()
    return np.array([acc.add(float(v)) for v in values], dtype=float)


def accumulate(terms, checkpoint_stride=DEFAULT_STRIDE, n=None, start_index=1, gammas=None):
    """Build a ``TermSeries`` from ordered terms.

    A checkpoint ``(global index, cum_re, cum_im)`` is kept after every
    ``checkpoint_stride`` terms.
    """
    terms = np.asarray(terms, dtype=complex)
    if terms.size == 0:
        raise ValueError("no terms to accumulate")
    if checkpoint_stride < 1:
        raise ValueError("checkpoint_stride must be >= 1")
    if gammas is not None and len(gammas) != terms.size:
        raise ValueError("gammas and terms differ in length")
    cum_re = prefix_sums(terms.real)
    cum_im = prefix_sums(terms.imag)
    checkpoints = [
        (start_index + k, float(cum_re[k]), float(cum_im[k]))
        for k in range(checkpoint_stride - 1, terms.size, checkpoint_stride)
    ]
    return TermSeries(
        n=n,
        start_index=start_index,
        terms=terms,
        cum_re=cum_re,
        cum_im=cum_im,
        checkpoint_stride=checkpoint_stride,
        checkpoints=checkpoints,
        gammas=None if gammas is None else np.asarray(gammas, dtype=float),
    )


def sum_series(catalog, n, checkpoint_stride=DEFAULT_STRIDE, jobs=1, paired=False):
    """compute_terms + accumulate, with the catalog attached."""
    terms = compute_terms(catalog, n, jobs=jobs)
    if paired:
        terms = pair_conjugates(terms)
    return accumulate(terms, checkpoint_stride, n=n, start_index=catalog.start_index, gammas=catalog.gammas)


def _fmt(x):
    return format(float(x), ".17g")


def csv_columns(series, component="both"):
    if component not in COMPONENTS:
        raise ValueError(f"component must be one of {COMPONENTS}")
    cols = ["index"]
    if series.gammas is not None:
        cols.append("gamma")
    if component in ("re", "both"):
        cols.append("re_term")
    if component in ("im", "both"):
        cols.append("im_term")
    if component in ("re", "both"):
        cols.append("cum_re")
    if component in ("im", "both"):
        cols.append("cum_im")
    return cols


def series_to_csv(series, stream, component="both"):
    """Write the series as CSV, 17 significant digits, '\\n' line endings.

    Columns are ``index,gamma,re_term,im_term,cum_re,cum_im``; ``gamma`` only
    appears when the catalog is attached, and ``component`` drops the real
    or imaginary columns.
    """
    cols = csv_columns(series, component)
    data = {
        "index": (str(i) for i in series.indices),
        "gamma": (_fmt(g) for g in series.gammas) if series.gammas is not None else None,
        "re_term": (_fmt(t) for t in series.terms.real),
        "im_term": (_fmt(t) for t in series.terms.imag),
        "cum_re": (_fmt(v) for v in series.cum_re),
        "cum_im": (_fmt(v) for v in series.cum_im),
    }
    buf = io.StringIO()
    buf.write(",".join(cols) + "\n")
    for row in zip(*(data[c] for c in cols)):
        buf.write(",".join(row) + "\n")
    payload = buf.getvalue()
    if isinstance(stream, io.TextIOBase):
        stream.write(payload)
    else:
        stream.write(payload.encode("ascii"))


def read_series_csv(stream):
    """Parse ``series_to_csv`` output into a dict of numpy columns.

    Raises ``ValueError`` on a malformed header or row.
    """
    data = stream.read()
    if isinstance(data, bytes):
        data = data.decode("ascii")
    lines = data.splitlines()
    if not lines:
        raise ValueError("empty CSV")
    header = lines[0].split(",")
    if not header or header[0] != "index" or any(h not in CSV_COLUMNS for h in header):
        raise ValueError(f"unexpected CSV header {lines[0]!r}")
    if len(set(header)) != len(header):
        raise ValueError("duplicate CSV columns")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != len(header):
            raise ValueError(f"line {lineno}: expected {len(header)} fields")
        try:
            rows.append([float(p) for p in parts])
        except ValueError:
            raise ValueError(f"line {lineno}: non-numeric field") from None
    if not rows:
        raise ValueError("CSV has no data rows")
    table = np.array(rows, dtype=float)
    out = {name: table[:, j] for j, name in enumerate(header)}
    out["index"] = out["index"].astype(np.int64)
    return out
