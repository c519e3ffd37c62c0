"""Tables of Riemann zeta zero ordinates.

File formats
------------
``plain``
    UTF-8 text, one ordinate per line. Lines starting with ``#`` are
    comments; a ``# start=K`` comment sets the global index of the first
    ordinate (default 1). Blank lines are skipped.
``indexed_block``
    One ``K gamma_K`` pair per line, K consecutive.

Ordinates must carry at least ``MIN_DECIMALS`` (9) decimal places. With
log n <= 14 a truncation of 5e-10 in gamma moves the phase of n**rho by at
most 1.4e-8 rad.

Indices are global and 1-based: ``catalog.slice(2249, 6481)`` holds zeros
2249 through 6481 inclusive.
"""

import io
import math
import os
import re
import tempfile
import urllib.error
import urllib.request
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    EmptyTable,
    FirstZeroMismatch,
    IndexOutOfRange,
    IntegrityError,
    MonotonicityViolation,
    NetworkError,
    NonConsecutiveIndex,
    NotFromFirstZero,
    ParseError,
    UrlNotAllowed,
    ZetaCycleError,
)

MIN_DECIMALS = 9
DEFAULT_TOLERANCE = 2.0
FIRST_ZERO_RANGE = (14.0, 14.2)
FORMATS = ("plain", "indexed_block")

_START_RE = re.compile(r"#\s*start\s*=\s*(\d+)\s*$")
_NUMBER_RE = re.compile(r"^[+]?(\d+)(?:\.(\d*))?$")


@dataclass(frozen=True, eq=False)
class ZeroCatalog:
    """Immutable ordered ordinates gamma_k, k = start_index, start_index + 1, ..."""

    source: str
    start_index: int
    gammas: np.ndarray = field(repr=False)

    def __post_init__(self):
        g = np.array(self.gammas, dtype=float)
        if g.ndim != 1:
            raise ValueError("gammas must be one-dimensional")
        if not np.all(np.isfinite(g)) or np.any(g <= 0):
            bad = int(np.nonzero(~np.isfinite(g) | (g <= 0))[0][0])
            raise ValueError(f"ordinate #{self.start_index + bad} is not a finite positive number")
        if self.start_index < 1:
            raise ValueError("start_index must be >= 1")
        g.setflags(write=False)
        object.__setattr__(self, "gammas", g)

    def __len__(self):
        return self.gammas.size

    @property
    def count(self):
        return self.gammas.size

    @property
    def end_index(self):
        return self.start_index + self.count - 1

    @property
    def indices(self):
        return np.arange(self.start_index, self.end_index + 1)

    def gamma(self, index):
        """Ordinate of the zero with global index ``index``."""
        if not self.start_index <= index <= self.end_index:
            raise IndexOutOfRange(f"index {index} outside [{self.start_index}, {self.end_index}]")
        return float(self.gammas[index - self.start_index])

    def slice(self, from_index, to_index):
        return slice_catalog(self, from_index, to_index)

    def head(self, count):
        return slice_catalog(self, self.start_index, self.start_index + count - 1)


@dataclass(frozen=True)
class ValidationReport:
    count: int
    t_max: float
    expected_count: float
    discrepancy: float
    tolerance: float
    passed: bool

    def summary(self):
        status = "passed" if self.passed else "FAILED"
        return (
            f"{status}: count={self.count} T={self.t_max:.9f} "
            f"N(T)={self.expected_count:.3f} discrepancy={self.discrepancy:+.3f} "
            f"(tolerance {self.tolerance:g})"
        )


def _text_lines(stream):
    data = stream.read()
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8 text: {exc}") from None
    return data.splitlines()


def _parse_ordinate(token, lineno, min_decimals):
    m = _NUMBER_RE.match(token)
    if m is None:
        raise ParseError(f"malformed ordinate {token!r}", lineno)
    decimals = len(m.group(2) or "")
    if decimals < min_decimals:
        raise ParseError(f"{token!r} has {decimals} decimal places, need at least {min_decimals}", lineno)
    return float(token)


def parse_zero_file(stream, format="plain", source="<stream>", min_decimals=MIN_DECIMALS):
    """Read a zero table from a binary or text stream.

    Raises ``ParseError`` (carrying the 1-based line number), ``EmptyTable``
    or, for ``indexed_block``, ``NonConsecutiveIndex``.
    """
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    start = None
    values = []
    for lineno, raw in enumerate(_text_lines(stream), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _START_RE.match(line)
            if m and format == "plain":
                if values or start is not None:
                    raise ParseError("'# start=' header must precede the data", lineno)
                start = int(m.group(1))
            continue
        if format == "plain":
            values.append(_parse_ordinate(line, lineno, min_decimals))
            continue
        parts = line.split()
        if len(parts) != 2 or not parts[0].isdigit():
            raise ParseError(f"expected 'K gamma_K', got {line!r}", lineno)
        k = int(parts[0])
        if start is None:
            start = k
        elif k != start + len(values):
            raise NonConsecutiveIndex(f"index {k} follows {start + len(values) - 1}", lineno)
        values.append(_parse_ordinate(parts[1], lineno, min_decimals))
    if not values:
        raise EmptyTable(f"{source}: no ordinates found")
    try:
        return ZeroCatalog(source, 1 if start is None else start, np.array(values))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def load_zero_file(path, format="plain", min_decimals=MIN_DECIMALS):
    path = Path(path)
    with open(path, "rb") as fh:
        return parse_zero_file(fh, format, source=str(path), min_decimals=min_decimals)


def _format_ordinate(g):
    s = repr(float(g))
    if "e" in s or "inf" in s or "nan" in s:
        s = f"{g:.17f}"
    whole, _, frac = s.partition(".")
    if len(frac) < MIN_DECIMALS:
        frac = frac.ljust(MIN_DECIMALS, "0")
    return f"{whole}.{frac}"


def write_zero_file(catalog, stream):
    """Write ``catalog`` in plain format; re-parsing gives identical floats."""
    text = io.StringIO()
    text.write(f"# source: {catalog.source}\n")
    text.write(f"# start={catalog.start_index}\n")
    for g in catalog.gammas:
        text.write(_format_ordinate(g) + "\n")
    payload = text.getvalue()
    if isinstance(stream, io.TextIOBase):
        stream.write(payload)
    else:
        stream.write(payload.encode("utf-8"))


def riemann_von_mangoldt(t):
    """Smooth zero count N(T) = T/(2 pi) log(T/(2 pi e)) + 7/8."""
    x = t / (2 * math.pi)
    return x * math.log(x / math.e) + 0.875


def check_monotonic(catalog):
    g = catalog.gammas
    bad = np.nonzero(np.diff(g) <= 0)[0]
    if bad.size:
        i = int(bad[0]) + 1
        raise MonotonicityViolation(catalog.start_index + i, float(g[i - 1]), float(g[i]))


def validate(catalog, tolerance=DEFAULT_TOLERANCE):
    """Check ordering and compare the zero count with N(T) at the last ordinate.

    Raises ``MonotonicityViolation`` at the first ordinate not exceeding its
    predecessor, ``NotFromFirstZero`` for tables that do not start at zero 1,
    and ``FirstZeroMismatch`` if gamma_1 is not 14.13...
    """
    if catalog.count == 0:
        raise EmptyTable("empty catalog")
    if catalog.start_index != 1:
        raise NotFromFirstZero(
            f"zero counts are only meaningful from zero #1 (table starts at #{catalog.start_index})"
        )
    check_monotonic(catalog)
    lo, hi = FIRST_ZERO_RANGE
    if not lo <= catalog.gammas[0] <= hi:
        raise FirstZeroMismatch(f"first ordinate {catalog.gammas[0]!r} is not in [{lo}, {hi}]")
    t_max = float(catalog.gammas[-1])
    expected = riemann_von_mangoldt(t_max)
    discrepancy = catalog.count - expected
    return ValidationReport(
        count=catalog.count,
        t_max=t_max,
        expected_count=expected,
        discrepancy=discrepancy,
        tolerance=tolerance,
        passed=abs(discrepancy) <= tolerance,
    )


def slice_catalog(catalog, from_index, to_index):
    """Zeros ``from_index`` through ``to_index`` (global, inclusive)."""
    if not catalog.start_index <= from_index <= to_index <= catalog.end_index:
        raise IndexOutOfRange(
            f"slice [{from_index}, {to_index}] not within [{catalog.start_index}, {catalog.end_index}]"
        )
    lo = from_index - catalog.start_index
    hi = to_index - catalog.start_index + 1
    return ZeroCatalog(catalog.source, from_index, catalog.gammas[lo:hi])


def table_is_usable(path, format="plain"):
    try:
        load_zero_file(path, format)
    except (OSError, ZetaCycleError):
        return False
    return True


def fetch_zero_table(source_url, destination, allowed_urls, format="plain", timeout=60.0):
    """Download a zero table to ``destination`` atomically.

    Nothing is fetched when ``destination`` already holds a parseable table.
    The download goes to a temporary file in the destination directory and is
    only renamed into place after it parses.

    Raises
    ------
    UrlNotAllowed
        ``source_url`` is not in ``allowed_urls``; raised before any I/O.
    NetworkError
        the transfer failed.
    IntegrityError
        the downloaded file is not a valid zero table.
    """
    if source_url not in set(allowed_urls):
        raise UrlNotAllowed(f"{source_url} is not in the configured allow-list")
    destination = Path(destination)
    if destination.exists() and table_is_usable(destination, format):
        return destination
    destination.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=destination.name + ".", suffix=".part", dir=destination.parent)
    try:
        with os.fdopen(fd, "wb") as out:
            try:
                with urllib.request.urlopen(source_url, timeout=timeout) as resp:
                    while True:
                        chunk = resp.read(1 << 16)
                        if not chunk:
                            break
                        out.write(chunk)
            except (urllib.error.URLError, OSError, ValueError) as exc:
                raise NetworkError(f"download of {source_url} failed: {exc}") from exc
        try:
            load_zero_file(tmp, format)
        except ZetaCycleError as exc:
            raise IntegrityError(f"{source_url} did not yield a valid zero table: {exc}") from exc
        os.replace(tmp, destination)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)
    return destination
