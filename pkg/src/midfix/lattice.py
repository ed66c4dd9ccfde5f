"""Finite complete lattices, monotone maps, and the middle fixpoint operators.

On a finite lattice every monotone f has, for each pre-fixed x (x <= f(x)),
a least fixpoint above x reached by iterating f; dually for post-fixed
points.  The two operators form a Galois connection between the suborders
of pre- and post-fixed points, which `galois_check` verifies exhaustively.

A numeric twin on the unit interval does the same by tolerance-bounded
iteration; monotonicity there is only checked on a sample grid.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Optional


class LatticeError(ValueError):
    pass


class NotAPartialOrder(LatticeError):
    def __init__(self, law: str, witness):
        super().__init__(f"{law} fails at {witness!r}")
        self.law = law
        self.witness = witness


class MissingJoinOrMeet(LatticeError):
    def __init__(self, kind: str, witness):
        super().__init__(f"no unique {kind} for pair {witness!r}")
        self.kind = kind
        self.witness = witness


class NotMonotone(LatticeError):
    def __init__(self, witness):
        x, y = witness
        super().__init__(f"monotonicity fails: {x!r} <= {y!r} but images are not ordered")
        self.witness = witness


class NotPreFixed(LatticeError):
    pass


class NotPostFixed(LatticeError):
    pass


class NotPreFixedNumeric(LatticeError):
    pass


class NotPostFixedNumeric(LatticeError):
    pass


class NoConvergence(LatticeError):
    """Iteration hit max_iterations; carries the best iterate and residual."""

    def __init__(self, best: float, residual: float, iterations: int):
        super().__init__(
            f"no convergence after {iterations} iterations (residual {residual:g})"
        )
        self.best = best
        self.residual = residual
        self.iterations = iterations


@dataclass(frozen=True)
class FinLattice:
    """A finite complete lattice: elements plus a validated order relation."""

    elements: tuple
    leq: frozenset  # pairs (x, y) with x <= y, reflexive pairs included

    def le(self, x, y) -> bool:
        return (x, y) in self.leq

    def upper_bounds(self, x, y) -> list:
        return [z for z in self.elements if self.le(x, z) and self.le(y, z)]

    def lower_bounds(self, x, y) -> list:
        return [z for z in self.elements if self.le(z, x) and self.le(z, y)]

    def join(self, x, y):
        ubs = self.upper_bounds(x, y)
        least = [z for z in ubs if all(self.le(z, w) for w in ubs)]
        return least[0]

    def meet(self, x, y):
        lbs = self.lower_bounds(x, y)
        greatest = [z for z in lbs if all(self.le(w, z) for w in lbs)]
        return greatest[0]

    @property
    def bottom(self):
        return next(x for x in self.elements if all(self.le(x, y) for y in self.elements))

    @property
    def top(self):
        return next(y for y in self.elements if all(self.le(x, y) for x in self.elements))

    def covers(self) -> list[tuple]:
        """Covering pairs (x, y): x < y with nothing strictly between."""
        out = []
        for x in self.elements:
            for y in self.elements:
                if x == y or not self.le(x, y):
                    continue
                if any(
                    z != x and z != y and self.le(x, z) and self.le(z, y)
                    for z in self.elements
                ):
                    continue
                out.append((x, y))
        return out


def check_lattice(elements: Iterable, leq_pairs: Iterable[tuple]) -> FinLattice:
    """Validate the poset laws and existence of all binary joins and meets."""
    elems = tuple(elements)
    if not elems:
        raise LatticeError("lattice needs at least one element")
    rel = frozenset((x, y) for x, y in leq_pairs)
    for x in elems:
        if (x, x) not in rel:
            raise NotAPartialOrder("reflexivity", (x, x))
    for x, y in rel:
        if x != y and (y, x) in rel:
            raise NotAPartialOrder("antisymmetry", (x, y))
    for x, y in rel:
        for y2, z in rel:
            if y == y2 and (x, z) not in rel:
                raise NotAPartialOrder("transitivity", (x, z))
    lat = FinLattice(elems, rel)
    for x, y in itertools.combinations_with_replacement(elems, 2):
        ubs = lat.upper_bounds(x, y)
        if len([z for z in ubs if all(lat.le(z, w) for w in ubs)]) != 1:
            raise MissingJoinOrMeet("join", (x, y))
        lbs = lat.lower_bounds(x, y)
        if len([z for z in lbs if all(lat.le(w, z) for w in lbs)]) != 1:
            raise MissingJoinOrMeet("meet", (x, y))
    return lat


@dataclass(frozen=True)
class MonotoneMap:
    """A validated monotone endofunction on a finite lattice."""

    lattice: FinLattice
    mapping: tuple  # pairs (x, f(x)), sorted for canonical equality

    def __call__(self, x):
        return dict(self.mapping)[x]

    def as_dict(self) -> dict:
        return dict(self.mapping)


def check_monotone(mapping: Mapping, lattice: FinLattice) -> MonotoneMap:
    table = dict(mapping)
    for x in lattice.elements:
        if x not in table:
            raise LatticeError(f"map not total: missing {x!r}")
        if table[x] not in lattice.elements:
            raise LatticeError(f"map leaves the lattice at {x!r}")
    for x in lattice.elements:
        for y in lattice.elements:
            if lattice.le(x, y) and not lattice.le(table[x], table[y]):
                raise NotMonotone((x, y))
    return MonotoneMap(lattice, tuple(sorted(table.items(), key=lambda p: str(p))))


@dataclass
class FixpointReport:
    pre_fixed: tuple
    post_fixed: tuple
    fixed: tuple
    mu_table: dict = field(default_factory=dict)
    nu_table: dict = field(default_factory=dict)
    galois_ok: bool = True
    violations: list = field(default_factory=list)


def classify_points(f: MonotoneMap) -> FixpointReport:
    lat = f.lattice
    pre = tuple(x for x in lat.elements if lat.le(x, f(x)))
    post = tuple(y for y in lat.elements if lat.le(f(y), y))
    fixed = tuple(x for x in pre if x in post)
    return FixpointReport(pre, post, fixed)


def mu_lattice(f: MonotoneMap, x):
    """Least fixpoint above a pre-fixed x, by ascending iteration."""
    lat = f.lattice
    if not lat.le(x, f(x)):
        raise NotPreFixed(f"{x!r} is not pre-fixed")
    current = x
    for _ in range(len(lat.elements) + 1):
        nxt = f(current)
        if nxt == current:
            return current
        current = nxt
    raise AssertionError("monotone iteration from a pre-fixed point cannot cycle")


def nu_lattice(f: MonotoneMap, y):
    """Greatest fixpoint below a post-fixed y, by descending iteration."""
    lat = f.lattice
    if not lat.le(f(y), y):
        raise NotPostFixed(f"{y!r} is not post-fixed")
    current = y
    for _ in range(len(lat.elements) + 1):
        nxt = f(current)
        if nxt == current:
            return current
        current = nxt
    raise AssertionError("monotone iteration from a post-fixed point cannot cycle")


def galois_check(f: MonotoneMap) -> FixpointReport:
    """Check mu(x) <= y iff x <= nu(y) over all pre-/post-fixed pairs."""
    report = classify_points(f)
    lat = f.lattice
    report.mu_table = {x: mu_lattice(f, x) for x in report.pre_fixed}
    report.nu_table = {y: nu_lattice(f, y) for y in report.post_fixed}
    for x in report.pre_fixed:
        for y in report.post_fixed:
            left = lat.le(report.mu_table[x], y)
            right = lat.le(x, report.nu_table[y])
            if left != right:
                report.violations.append((x, y))
    report.galois_ok = not report.violations
    return report


def all_lattices(max_size: int) -> Iterator[FinLattice]:
    """Every lattice on labeled sets of size 1..max_size.

    Labeled enumeration covers all isomorphism classes (with repeats);
    intended for exhaustive desk-scale oracles only.
    """
    for n in range(1, max_size + 1):
        elems = tuple(f"e{i}" for i in range(n))
        off_diag = [(x, y) for x in elems for y in elems if x != y]
        diag = [(x, x) for x in elems]
        for bits in itertools.product((False, True), repeat=len(off_diag)):
            pairs = diag + [p for p, keep in zip(off_diag, bits) if keep]
            try:
                yield check_lattice(elems, pairs)
            except LatticeError:
                continue


def all_monotone_maps(lattice: FinLattice) -> Iterator[MonotoneMap]:
    """Every monotone endofunction on a finite lattice, exhaustively."""
    elems = lattice.elements
    for images in itertools.product(elems, repeat=len(elems)):
        table = dict(zip(elems, images))
        if all(
            lattice.le(table[x], table[y])
            for x in elems
            for y in elems
            if lattice.le(x, y)
        ):
            yield MonotoneMap(
                lattice, tuple(sorted(table.items(), key=lambda p: str(p)))
            )


# -- numeric twin on [0, 1] -------------------------------------------------

DEFAULT_TOLERANCE = 1e-9
DEFAULT_MAX_ITERATIONS = 10 ** 6
DEFAULT_SAMPLE_GRID = 1024


@dataclass
class IntervalMap:
    """A monotone self-map of [0, 1], checked on a sample grid only."""

    fn: Callable[[float], float]
    sample_grid: int = DEFAULT_SAMPLE_GRID
    tolerance: float = DEFAULT_TOLERANCE
    max_iterations: int = DEFAULT_MAX_ITERATIONS

    def __post_init__(self):
        if self.sample_grid <= 0 or self.tolerance <= 0 or self.max_iterations <= 0:
            raise LatticeError("grid, tolerance and max_iterations must be positive")
        xs = self.grid()
        values = [self.fn(x) for x in xs]
        for x, v in zip(xs, values):
            if not 0.0 <= v <= 1.0:
                raise LatticeError(f"fn({x}) = {v} leaves [0, 1]")
        for (x, vx), (y, vy) in itertools.combinations(zip(xs, values), 2):
            if x <= y and vx > vy + self.tolerance:
                raise NotMonotone((x, y))

    def grid(self) -> list[float]:
        n = self.sample_grid
        return [i / (n - 1) for i in range(n)] if n > 1 else [0.0]


@dataclass(frozen=True)
class IntervalFixpoint:
    value: float
    residual: float
    iterations: int


def _iterate_interval(im: IntervalMap, x: float) -> IntervalFixpoint:
    current = x
    for i in range(im.max_iterations):
        nxt = im.fn(current)
        if abs(nxt - current) < im.tolerance:
            return IntervalFixpoint(nxt, abs(im.fn(nxt) - nxt), i + 1)
        current = nxt
    raise NoConvergence(current, abs(im.fn(current) - current), im.max_iterations)


def mu_interval(im: IntervalMap, x: float) -> IntervalFixpoint:
    """First fixpoint above a numerically pre-fixed x, by iteration."""
    if not 0.0 <= x <= 1.0:
        raise LatticeError(f"{x} outside [0, 1]")
    if im.fn(x) < x - im.tolerance:
        raise NotPreFixedNumeric(f"fn({x}) = {im.fn(x)} < {x}")
    return _iterate_interval(im, x)


def nu_interval(im: IntervalMap, y: float) -> IntervalFixpoint:
    """Closest fixpoint below a numerically post-fixed y, by iteration."""
    if not 0.0 <= y <= 1.0:
        raise LatticeError(f"{y} outside [0, 1]")
    if im.fn(y) > y + im.tolerance:
        raise NotPostFixedNumeric(f"fn({y}) = {im.fn(y)} > {y}")
    return _iterate_interval(im, y)


FIVE_FIXPOINTS = (0.0, 0.25, 0.5, 0.75, 1.0)


def five_fixpoint_map(
    strength: float = 4.0,
    sample_grid: int = DEFAULT_SAMPLE_GRID,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> IntervalMap:
    """The shipped interval example: monotone with fixpoints exactly at
    0, 1/4, 1/2, 3/4, 1.

    f(x) = x + strength * x(x-1/4)(x-1/2)(x-3/4)(x-1); the perturbation's
    derivative stays above -1/strength in magnitude, keeping f increasing.
    """

    def fn(x: float) -> float:
        value = x + strength * x * (x - 0.25) * (x - 0.5) * (x - 0.75) * (x - 1.0)
        return min(1.0, max(0.0, value))

    return IntervalMap(fn, sample_grid, tolerance, max_iterations)


def locate_interval_fixpoints(
    im: IntervalMap, grid: Optional[int] = None, refine_tol: float = 1e-12
) -> list[float]:
    """Numerically locate fixpoints of fn by sign scan of fn(x) - x plus bisection.

    Independent of the iteration path: used as the oracle for mu/nu_interval.
    """
    n = grid or im.sample_grid
    xs = [i / (n - 1) for i in range(n)]
    found: list[float] = []

    def residual(x: float) -> float:
        return im.fn(x) - x

    def add(x: float) -> None:
        if all(abs(x - other) > 1e-6 for other in found):
            found.append(x)

    for x in xs:
        if abs(residual(x)) < refine_tol:
            add(x)
    for a, b in zip(xs, xs[1:]):
        ra, rb = residual(a), residual(b)
        if ra == 0.0 or rb == 0.0 or (ra > 0) == (rb > 0):
            continue
        lo, hi, rlo = a, b, ra
        for _ in range(200):
            mid = (lo + hi) / 2
            rm = residual(mid)
            if rm == 0.0 or hi - lo < refine_tol:
                break
            if (rm > 0) == (rlo > 0):
                lo, rlo = mid, rm
            else:
                hi = mid
        add((lo + hi) / 2)
    return sorted(found)
