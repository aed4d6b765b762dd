"""Experiment harness: order sweeps, the finite-approximation check, random-word histograms.

Everything here is exact.  Values are ``Fraction``s and formula comparisons are
rational equality.  CSV output prints rationals as ``p/q`` with a separate
decimal column for plotting.
"""
from __future__ import annotations

import csv
import io
import itertools
import logging
import math
import random
from collections import Counter
from collections.abc import Callable, Iterable, Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .chain import Chain, ChainError, GroupSpec, parse_chain, parse_group
from .scl import compute_scl, format_rational

__all__ = [
    "SweepSpec",
    "SweepRow",
    "sweep",
    "sweep_csv",
    "parse_range",
    "FiniteApproxReport",
    "check_finite_approx",
    "RandomChainSpec",
    "random_chains",
    "histogram",
    "histogram_csv",
    "SampleRow",
    "sample_scl",
    "samples_csv",
    "bracket_coefficients",
    "commutator_formula",
    "bracket_formula",
]

log = logging.getLogger(__name__)


@dataclass
class SweepSpec:
    """Chain template plus a finite range of orders for each generator.

    ``ranges`` maps generator symbols to iterables of orders (0 or >= 2);
    the grid is their product, in the given symbol order.
    """

    words: Sequence[str]
    ranges: Mapping[str, Sequence[int]]
    expected: Callable[[dict[str, int]], Fraction] | None = None
    warm_start: bool = True

    def __post_init__(self):
        if isinstance(self.words, str):
            self.words = [self.words]
        self.ranges = {s: list(r) for s, r in self.ranges.items()}
        for s, r in self.ranges.items():
            bad = [o for o in r if o == 1 or o < 0]
            if bad:
                raise ChainError(f"order of {s!r} must be 0 or at least 2, got {bad[0]}")

    def grid(self) -> list[dict[str, int]]:
        symbols = list(self.ranges)
        return [dict(zip(symbols, combo)) for combo in itertools.product(*self.ranges.values())]


@dataclass
class SweepRow:
    orders: dict[str, int]
    value: Fraction | None
    expected: Fraction | None = None
    error: str | None = None

    @property
    def matches(self) -> bool | None:
        if self.expected is None or self.value is None:
            return None
        return self.value == self.expected


def _sweep_point(job: tuple[tuple[str, ...], dict[str, int], bool]) -> tuple[Fraction | None, str | None]:
    words, orders, warm = job
    try:
        group = GroupSpec.from_orders(orders)
        return compute_scl(group, list(words), warm_start=warm).value, None
    except Exception as exc:  # recorded per point, the sweep goes on
        return None, f"{type(exc).__name__}: {exc}"


def sweep(spec: SweepSpec, jobs: int = 1) -> list[SweepRow]:
    """Exact scl at every grid point, in grid order.

    With ``jobs > 1`` points run in a process pool; output order is unchanged.
    """
    grid = spec.grid()
    work = [(tuple(spec.words), orders, spec.warm_start) for orders in grid]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_point, work))
    else:
        results = [_sweep_point(w) for w in work]
    rows = []
    for orders, (value, err) in zip(grid, results):
        expected = spec.expected(orders) if spec.expected is not None else None
        if err:
            log.warning("sweep point %s failed: %s", orders, err)
        rows.append(SweepRow(orders, value, expected, err))
    return rows


def _decimal(q: Fraction | None) -> str:
    return "" if q is None else f"{float(q):.10g}"


def sweep_csv(rows: Sequence[SweepRow]) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    symbols = list(rows[0].orders) if rows else []
    with_expected = any(r.expected is not None for r in rows)
    header = [f"o_{s}" for s in symbols] + ["scl", "scl_decimal"]
    if with_expected:
        header += ["expected", "match"]
    w.writerow(header + ["error"])
    for r in rows:
        line = [r.orders[s] for s in symbols]
        line += ["" if r.value is None else format_rational(r.value), _decimal(r.value)]
        if with_expected:
            line += ["" if r.expected is None else format_rational(r.expected),
                     "" if r.matches is None else int(r.matches)]
        w.writerow(line + [r.error or ""])
    return out.getvalue()


def parse_range(text: str) -> tuple[str, list[int]]:
    """``"a=2:6"`` (inclusive), ``"a=3,5,0"`` or ``"a=4"`` -> ``("a", [...])``."""
    try:
        symbol, body = text.split("=", 1)
        symbol = symbol.strip()
        if ":" in body:
            lo, hi = body.split(":", 1)
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(v) for v in body.split(",")]
    except ValueError:
        raise ChainError(f"malformed range {text!r}; expected e.g. 'a=2:6' or 'a=3,5'") from None
    if not (len(symbol) == 1 and symbol.islower()) or not values:
        raise ChainError(f"malformed range {text!r}; expected e.g. 'a=2:6' or 'a=3,5'")
    return symbol, values


def commutator_formula(orders: Mapping[str, int]) -> Fraction:
    """``1/2 - 1/min`` over the finite orders (``1/2`` in a free group)."""
    finite = [o for o in orders.values() if o]
    return Fraction(1, 2) - (Fraction(1, min(finite)) if finite else 0)


def bracket_formula(constant: Fraction, even: Fraction, odd: Fraction
                    ) -> Callable[[Mapping[str, int]], Fraction]:
    """``constant - {even, odd}/m`` with ``m`` the least finite order and the
    bracket chosen by the parity of ``m``."""

    def f(orders: Mapping[str, int]) -> Fraction:
        m = min(o for o in orders.values() if o)
        return constant - (even if m % 2 == 0 else odd) / m

    return f


def bracket_coefficients(values: Mapping[int, Fraction], constant: Fraction) -> dict[int, Fraction]:
    """Recover ``c(o)`` from ``value(o) = constant - c(o)/o``.

    A quasilinear family has ``c`` periodic in ``o``.
    """
    return {o: (Fraction(constant) - Fraction(v)) * o for o, v in values.items()}


@dataclass
class FiniteApproxReport:
    scl_free: Fraction
    scl_quotient: Fraction
    correction: Fraction
    lower_ok: bool
    upper_ok: bool

    @property
    def upper_bound(self) -> Fraction:
        return self.scl_quotient + self.correction

    @property
    def holds(self) -> bool:
        return self.lower_ok and self.upper_ok

    @property
    def tight(self) -> bool:
        return self.scl_free == self.upper_bound

    def __str__(self) -> str:
        f = format_rational
        return (f"{f(self.scl_quotient)} <= {f(self.scl_free)} <= {f(self.scl_quotient)} + "
                f"{f(self.correction)} = {f(self.upper_bound)}"
                f"  [{'ok' if self.holds else 'VIOLATED'}{', tight' if self.tight else ''}]")


def check_finite_approx(words: str | Sequence[str], orders: GroupSpec | str | Mapping[str, int],
                        *, warm_start: bool = True) -> FiniteApproxReport:
    """Compare scl in the free group with scl in the quotient with the given orders.

    Expects ``scl_G <= scl_H <= scl_G + sum_j |chain|_j / (2 o_j)``, the sum
    over finite factors and the letter counts taken in the free group.
    """
    if isinstance(orders, str):
        group = parse_group(orders)
    elif isinstance(orders, GroupSpec):
        group = orders
    else:
        group = GroupSpec.from_orders(orders)
    free = group.free_cover()
    h = compute_scl(free, words, warm_start=warm_start)
    g = compute_scl(group, words, warm_start=warm_start)
    counts = h.chain.factor_counts
    correction = sum(
        (Fraction(counts[j], 2 * f.order) for j, f in enumerate(group.factors) if f.is_finite),
        Fraction(0),
    )
    return FiniteApproxReport(h.value, g.value, correction,
                              g.value <= h.value, h.value <= g.value + correction)


@dataclass
class RandomChainSpec:
    """Random single-word chains of a given length.

    Letters are drawn i.i.d. uniformly from the generators and their inverses
    (``2 * #factors`` symbols) and then normalized.  Draws that are not
    homologically trivial or that normalize to nothing are rejected and redrawn.
    """

    group: GroupSpec | str
    length: int
    count: int
    seed: int = 0
    max_tries: int = 100_000

    def __post_init__(self):
        if isinstance(self.group, str):
            self.group = parse_group(self.group)
        if self.length < 1 or self.count < 0:
            raise ValueError("length must be positive and count nonnegative")


def random_chains(spec: RandomChainSpec) -> list[Chain]:
    rng = random.Random(spec.seed)
    alphabet = [c for s in spec.group.symbols for c in (s, s.upper())]
    out: list[Chain] = []
    tries = 0
    while len(out) < spec.count:
        tries += 1
        if tries > spec.max_tries:
            raise RuntimeError(f"gave up after {spec.max_tries} draws; no valid words of this length?")
        word = "".join(rng.choice(alphabet) for _ in range(spec.length))
        try:
            chain = parse_chain(spec.group, word)
        except ChainError:
            continue
        if not chain.is_empty:
            out.append(chain)
    return out


def histogram(values: Iterable[Fraction], bin_width: Fraction | str | float) -> list[tuple[Fraction, int]]:
    """Counts per bin ``[k w, (k+1) w)``, from the lowest to highest occupied bin."""
    w = Fraction(bin_width) if not isinstance(bin_width, float) else Fraction(bin_width).limit_denominator()
    if w <= 0:
        raise ValueError("bin width must be positive")
    counts = Counter(math.floor(Fraction(v) / w) for v in values)
    if not counts:
        return []
    return [(k * w, counts.get(k, 0)) for k in range(min(counts), max(counts) + 1)]


def histogram_csv(rows: Sequence[tuple[Fraction, int]]) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["bin_lower", "bin_lower_decimal", "count"])
    for lo, n in rows:
        w.writerow([format_rational(lo), _decimal(lo), n])
    return out.getvalue()


@dataclass
class SampleRow:
    chain: str
    value: Fraction | None
    error: str | None = None


def _sample_point(job: tuple[str, str, bool]) -> tuple[Fraction | None, str | None]:
    group, chain, warm = job
    try:
        return compute_scl(group, chain, warm_start=warm).value, None
    except Exception as exc:
        return None, f"{type(exc).__name__}: {exc}"


def sample_scl(spec: RandomChainSpec, jobs: int = 1, warm_start: bool = True) -> list[SampleRow]:
    """scl of each chain from :func:`random_chains`, in sampling order."""
    chains = random_chains(spec)
    work = [(str(spec.group), str(c), warm_start) for c in chains]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sample_point, work))
    else:
        results = [_sample_point(w) for w in work]
    return [SampleRow(str(c), v, e) for c, (v, e) in zip(chains, results)]


def samples_csv(rows: Sequence[SampleRow]) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["chain", "scl", "scl_decimal", "error"])
    for r in rows:
        w.writerow([r.chain, "" if r.value is None else format_rational(r.value),
                    _decimal(r.value), r.error or ""])
    return out.getvalue()

