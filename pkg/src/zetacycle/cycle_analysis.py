"""Period structure in cumulative sums, periodicity scores, and the
sinusoidal envelope model ``a + sin(x**e) / (b * x**e)``.

Period boundaries
-----------------
The cumulative sums rise slowly and then fall steeply, in a sawtooth shape.
By default a period runs from one steep fall to the next. Fall positions are
the local minima of the windowed slope ``s[i + h] - s[i - h]`` of the
smoothed series ``s``. Pass ``boundary="minimum"`` to split at minima of
the smoothed series instead. Either way the extrema of the smoothed series
are reported.
"""

import io
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import BadWindow, DegenerateData, DomainError, NoConvergence, TooShort

DEFAULT_WINDOW = 501
DEFAULT_MIN_PERIOD = 3000
DEFAULT_EXPONENT = 5 / 8
BOUNDARIES = ("descent", "minimum")


@dataclass(frozen=True)
class CycleReport:
    extrema: list
    periods: list
    score: float
    smoothing_window: int
    min_period: int
    boundary: str = "descent"
    boundaries: list = field(default_factory=list)

    @property
    def complete_periods(self):
        return len(self.periods)

    def summary(self):
        return f"score={self.score:.6f} periods={len(self.periods)}"


@dataclass(frozen=True)
class ModelFit:
    a: float
    b: float
    exponent: float
    residual_rms: float
    converged: bool
    iterations: int = 0
    gradient_norm: float = 0.0


def smooth(values, window):
    """Centred moving average; the window is truncated at both ends."""
    y = np.asarray(values, dtype=float)
    if window < 1 or window % 2 == 0 or window > y.size:
        raise BadWindow(f"window must be odd and in [1, {y.size}], got {window}")
    if window == 1:
        return y.copy()
    # centring keeps the running sums small for offset series
    shift = float(np.mean(y))
    c = np.concatenate(([0.0], np.cumsum(y - shift)))
    h = window // 2
    i = np.arange(y.size)
    lo = np.maximum(i - h, 0)
    hi = np.minimum(i + h + 1, y.size)
    return (c[hi] - c[lo]) / (hi - lo) + shift


def _strict_local(values, h, kind):
    """Positions where ``values`` is the unique extreme of its +-h neighbourhood."""
    n = values.size
    if n < 2 * h + 1:
        return np.empty(0, dtype=int)
    win = sliding_window_view(values, 2 * h + 1)
    centre = values[h:n - h]
    ext = win.max(axis=1) if kind == "max" else win.min(axis=1)
    unique = (win == centre[:, None]).sum(axis=1) == 1
    ok = (centre == ext) & unique & np.isfinite(centre)
    if h:
        # a turning point needs usable samples on both sides
        ok &= np.isfinite(values[h - 1:n - h - 1]) & np.isfinite(values[h + 1:n - h + 1])
    return np.nonzero(ok)[0] + h


def _suppress(positions, strength, min_period):
    """Keep the strongest positions no closer than ``min_period`` to a stronger one."""
    order = np.argsort(-strength[positions], kind="stable")
    kept = []
    for p in positions[order]:
        if all(abs(int(p) - q) >= min_period for q in kept):
            kept.append(int(p))
    return sorted(kept)


def find_extrema(smoothed, window, min_period):
    """Strict local extrema of ``smoothed`` over +-window/2, suppressed.

    The first and last window/2 samples average a truncated window; they
    are excluded from the comparisons so that end effects cannot mask or fake
    an extremum.
    """
    h = window // 2
    out = []
    for kind, sign in (("max", 1.0), ("min", -1.0)):
        vals = smoothed.copy()
        if h:
            vals[:h] = vals[-h:] = -sign * np.inf
        pos = _strict_local(vals, h, kind)
        for p in _suppress(pos, sign * smoothed, min_period):
            out.append((p, kind))
    return sorted(out)


def find_descents(smoothed, window, min_period):
    """Positions of the steepest falls of ``smoothed``."""
    h = max(window // 2, 1)
    n = smoothed.size
    slope = np.full(n, np.inf)
    # only slopes between samples with complete smoothing windows
    if n > 4 * h:
        slope[2 * h:n - 2 * h] = smoothed[3 * h:n - h] - smoothed[h:n - 3 * h]
    pos = _strict_local(slope, h, "min")
    pos = pos[slope[pos] < 0]
    return _suppress(pos, -slope, min_period)


def detect_cycles(series, min_period=DEFAULT_MIN_PERIOD, window=DEFAULT_WINDOW,
                  start_index=1, boundary="descent"):
    """Locate extrema and period intervals in ``series``.

    Positions in the report are global zero indices (``start_index`` is the
    index of ``series[0]``). Periods are ``(start, end)`` pairs between
    consecutive boundaries, each at least ``min_period`` long.
    """
    y = np.asarray(series, dtype=float)
    if min_period < 1:
        raise ValueError("min_period must be >= 1")
    if boundary not in BOUNDARIES:
        raise ValueError(f"boundary must be one of {BOUNDARIES}")
    if y.size < 3 * min_period:
        raise TooShort(f"{y.size} samples; detect_cycles needs at least 3 * min_period = {3 * min_period}")
    s = smooth(y, window)
    extrema = find_extrema(s, window, min_period)
    if boundary == "descent":
        marks = find_descents(s, window, min_period)
    else:
        marks = [p for p, kind in extrema if kind == "min"]
    periods = [(start_index + a, start_index + b) for a, b in zip(marks, marks[1:])]
    score = periodicity_score(y, min(min_period, y.size // 4))
    return CycleReport(
        extrema=[(start_index + p, kind) for p, kind in extrema],
        periods=periods,
        score=score,
        smoothing_window=window,
        min_period=min_period,
        boundary=boundary,
        boundaries=[start_index + p for p in marks],
    )


def _odd_window(length):
    w = max(1, int(round(length / 10)))
    if w % 2 == 0:
        w += 1
    return min(w, length if length % 2 else length - 1)


def detrend(series):
    """Remove the least-squares line, then a moving-average baseline of ~length/10."""
    y = np.asarray(series, dtype=float)
    k = np.arange(y.size, dtype=float)
    k -= k.mean()
    denom = float(k @ k)
    slope = float(k @ (y - y.mean())) / denom if denom else 0.0
    r = y - y.mean() - slope * k
    return r - smooth(r, _odd_window(y.size))


def lagged_correlation(r, min_lag, max_lag):
    """Pearson correlation of r[:-L] with r[L:] for L = min_lag..max_lag."""
    n = r.size
    nfft = 1 << int(math.ceil(math.log2(2 * n)))
    f = np.fft.rfft(r, nfft)
    raw = np.fft.irfft(f * np.conj(f), nfft)[: max_lag + 1]
    c1 = np.concatenate(([0.0], np.cumsum(r)))
    c2 = np.concatenate(([0.0], np.cumsum(r * r)))
    lags = np.arange(min_lag, max_lag + 1)
    m = n - lags
    sa, sb = c1[m], c1[n] - c1[lags]
    saa, sbb = c2[m], c2[n] - c2[lags]
    cov = raw[lags] - sa * sb / m
    va = saa - sa * sa / m
    vb = sbb - sb * sb / m
    denom = np.sqrt(np.clip(va, 0, None) * np.clip(vb, 0, None))
    scale = float(c2[n]) / n
    good = denom > 1e-12 * scale * m
    out = np.zeros(lags.size)
    out[good] = cov[good] / denom[good]
    return lags, out


def periodicity_score(series, min_lag):
    """Largest lagged autocorrelation of the detrended series, lags in
    [min_lag, length/2], clamped to [0, 1]. Constant input scores 0."""
    y = np.asarray(series, dtype=float)
    if min_lag < 1:
        raise ValueError("min_lag must be >= 1")
    if y.size < 4 * min_lag:
        raise TooShort(f"{y.size} samples; periodicity_score needs at least 4 * min_lag = {4 * min_lag}")
    r = detrend(y)
    if not np.any(np.abs(r) > 1e-12 * max(1.0, float(np.max(np.abs(y))))):
        return 0.0
    _, corr = lagged_correlation(r, min_lag, y.size // 2)
    return float(np.clip(corr.max(initial=0.0), 0.0, 1.0))


def report_to_csv(report, stream):
    """``kind,position`` block, blank line, ``start,end`` block."""
    buf = io.StringIO()
    buf.write("kind,position\n")
    for pos, kind in report.extrema:
        buf.write(f"{kind},{pos}\n")
    buf.write("\nstart,end\n")
    for a, b in report.periods:
        buf.write(f"{a},{b}\n")
    if isinstance(stream, io.TextIOBase):
        stream.write(buf.getvalue())
    else:
        stream.write(buf.getvalue().encode("ascii"))


# --- envelope model ---------------------------------------------------------

def model_eval(x, a, b, exponent=DEFAULT_EXPONENT):
    """a + sin(u) / (b u) with u = x**exponent."""
    if not x > 0:
        raise DomainError(f"x must be positive, got {x!r}")
    if b == 0:
        raise DomainError("b must be nonzero")
    u = x ** exponent
    return a + math.sin(u) / (b * u)


def _model(xs, a, b, e):
    u = xs ** e
    return a + np.sin(u) / (b * u)


def _jacobian(xs, a, b, e, fit_exponent):
    u = xs ** e
    su = np.sin(u)
    cols = [np.ones_like(xs), -su / (b * b * u)]
    if fit_exponent:
        cols.append((u * np.cos(u) - su) / (b * u) * np.log(xs))
    return np.column_stack(cols)


def model_fit(xs, ys, fit_exponent=False, exponent=DEFAULT_EXPONENT,
              max_iter=500, step_tol=1e-10, grad_tol=1e-8):
    """Least-squares fit of (a, b[, exponent]) by damped Gauss-Newton.

    Starts from a = mean(ys), b = 1 / (max|ys - a| * xs[0]**exponent). Each
    Gauss-Newton step is halved until the sum of squares does not increase,
    and iteration stops once the step norm drops below ``step_tol``.
    ``converged`` additionally requires |J^T r| <= grad_tol * |J| |r|, or a
    residual at roundoff level.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise ValueError("xs and ys must be 1-d and equally long")
    if xs.size < 10:
        raise ValueError("model_fit needs at least 10 samples")
    if np.any(xs <= 0) or np.any(np.diff(xs) <= 0):
        raise ValueError("xs must be positive and strictly increasing")
    a0 = float(ys.mean())
    spread = float(np.max(np.abs(ys - a0)))
    # mean() of equal floats may differ from them by an ulp
    if np.ptp(ys) <= 4 * np.finfo(float).eps * float(np.max(np.abs(ys))):
        raise DegenerateData("ys are constant; the amplitude divisor b is unidentifiable")
    b0 = 1.0 / (spread * xs[0] ** exponent)
    p = np.array([a0, b0, exponent] if fit_exponent else [a0, b0], dtype=float)

    def unpack(q):
        return q[0], q[1], (q[2] if fit_exponent else exponent)

    resid = _model(xs, *unpack(p)) - ys
    sse = float(resid @ resid)
    for it in range(1, max_iter + 1):
        jac = _jacobian(xs, *unpack(p), fit_exponent)
        step, *_ = np.linalg.lstsq(jac, -resid, rcond=None)
        lam = 1.0
        while lam >= 1e-12:
            trial = p + lam * step
            if trial[1] != 0:
                r_try = _model(xs, *unpack(trial)) - ys
                s_try = float(r_try @ r_try)
                if np.isfinite(s_try) and s_try <= sse:
                    break
            lam *= 0.5
        else:
            trial, r_try, s_try = p, resid, sse
        step_norm = float(np.linalg.norm(trial - p))
        p, resid, sse = trial, r_try, s_try
        if step_norm < step_tol:
            break
    else:
        raise NoConvergence(f"Gauss-Newton did not converge in {max_iter} iterations (last step {step_norm:.3g})")
    a, b, e = unpack(p)
    jac = _jacobian(xs, a, b, e, fit_exponent)
    grad = float(np.linalg.norm(jac.T @ resid))
    rnorm = math.sqrt(sse)
    exact = rnorm <= 1e-12 * math.sqrt(xs.size) * max(1.0, float(np.max(np.abs(ys))))
    return ModelFit(
        a=float(a),
        b=float(b),
        exponent=float(e),
        residual_rms=math.sqrt(sse / xs.size),
        converged=exact or grad <= grad_tol * float(np.linalg.norm(jac)) * rnorm,
        iterations=it,
        gradient_norm=grad,
    )
