"""Pushforward calculus and quasi-invariant measures on finite quasigroups.

Everything here is exact rational arithmetic: the statements being
verified are identities, and a float comparison could neither confirm
nor refute them at the boundary.

The central finite phenomenon: a permutation pushforward preserves total
mass, so (L_a)_* mu = j(a) mu forces j(a) = 1 whenever mu is a nonzero
finite measure.  Quasi-invariant therefore means invariant here, and the
solver reduces to the simultaneous fixed space of all 2n translation
actions, which transitivity of the left translations pins down to the
ray of the counting measure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cayley import FiniteQuasigroup
from .linalg import nullspace
from .perm import DegreeMismatch, Perm


class NoPositiveSolution(RuntimeError):
    """The invariance system admitted no positive measure.

    Unreachable for a valid Cayley table: counting measure is always
    invariant.  Raised rather than asserted so a corrupted input fails
    loudly.
    """


class Measure:
    """Nonnegative rational weights with positive total mass."""

    __slots__ = ("weights",)

    def __init__(self, weights):
        w = tuple(Fraction(x) for x in weights)
        if any(x < 0 for x in w):
            raise ValueError("negative weight")
        if not any(x > 0 for x in w):
            raise ValueError("zero measure")
        self.weights = w

    @classmethod
    def counting(cls, n: int) -> "Measure":
        return cls([Fraction(1)] * n)

    @property
    def degree(self) -> int:
        return len(self.weights)

    @property
    def mass(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def __getitem__(self, i: int) -> Fraction:
        return self.weights[i]

    def scaled(self, c) -> "Measure":
        c = Fraction(c)
        return Measure([c * x for x in self.weights])

    def normalized(self, target_mass) -> "Measure":
        return self.scaled(Fraction(target_mass) / self.mass)

    def __eq__(self, other):
        return isinstance(other, Measure) and self.weights == other.weights

    def __hash__(self):
        return hash(self.weights)

    def __repr__(self):
        return f"Measure({[str(x) for x in self.weights]})"


class Cocycle:
    """A map Q -> positive rationals, indexed by element."""

    __slots__ = ("values",)

    def __init__(self, values):
        v = tuple(Fraction(x) for x in values)
        if any(x <= 0 for x in v):
            raise ValueError("cocycle values must be positive")
        self.values = v

    @classmethod
    def constant(cls, n: int, value=1) -> "Cocycle":
        return cls([Fraction(value)] * n)

    def __getitem__(self, x: int) -> Fraction:
        return self.values[x]

    def __len__(self):
        return len(self.values)

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)

    def __eq__(self, other):
        return isinstance(other, Cocycle) and self.values == other.values

    def __repr__(self):
        return f"Cocycle({[str(x) for x in self.values]})"


def pushforward(t: Perm, mu: Measure) -> Measure:
    """(T_* mu)[i] = mu[T^-1(i)]; total mass is preserved."""
    if t.degree != mu.degree:
        raise DegreeMismatch(
            f"permutation degree {t.degree} != measure degree {mu.degree}"
        )
    out = [Fraction(0)] * mu.degree
    for j, w in zip(t.images, mu.weights):
        out[j] = w
    return Measure(out)


def pushforward_functoriality_check(s: Perm, t: Perm, mu: Measure) -> bool:
    """(S o T)_* mu == S_*(T_* mu), exactly."""
    return pushforward(s @ t, mu) == pushforward(s, pushforward(t, mu))


@dataclass(frozen=True)
class PairCheck:
    holds: bool
    counterexample: tuple[int, int] | None = None


@dataclass(frozen=True)
class QuasiInvariantSolution:
    dimension: int
    basis: tuple[tuple[Fraction, ...], ...]
    measure: Measure
    left_cocycle: Cocycle
    right_cocycle: Cocycle
    degenerate: bool
    description: str
    explanation: dict


def _ratio(pushed: Measure, mu: Measure):
    """The constant c with pushed = c * mu, or None if there is none.

    Coordinates where mu vanishes must vanish in pushed too; the ratio is
    read off the positive coordinates and must be shared by all of them.
    """
    c = None
    for p, m in zip(pushed.weights, mu.weights):
        if m == 0:
            if p != 0:
                return None
            continue
        r = p / m
        if c is None:
            c = r
        elif r != c:
            return None
    return c


def solve_quasi_invariant(q: FiniteQuasigroup) -> QuasiInvariantSolution:
    """Solve (L_a)_* mu = j(a) mu and (R_a)_* mu = rho(a) mu over Q.

    Mass conservation forces j = rho = 1, so the system is the common
    fixed space of all translations: mu[T(i)] = mu[i] for each of the 2n
    translation permutations T.  Solved by exact rational elimination;
    the cocycles are then read back off the solved measure by the ratio
    test as an independent confirmation of the forced value 1.
    """
    n = q.order
    translations = [q.left_translation(a) for a in range(n)]
    translations += [q.right_translation(a) for a in range(n)]

    # each invariance equation is mu[i] = mu[T(i)]; collect the distinct
    # difference rows (at most n choose 2 of them)
    pairs = set()
    for t in translations:
        for i, img in enumerate(t.images):
            if img != i:
                pairs.add((i, img) if i < img else (img, i))
    rows = []
    for i, j in sorted(pairs):
        row = [0] * n
        row[i] = 1
        row[j] = -1
        rows.append(row)
    basis = nullspace(rows, ncols=n)
    dimension = len(basis)

    candidate = None
    for vec in basis:
        if all(x > 0 for x in vec) or all(x < 0 for x in vec):
            candidate = [abs(x) for x in vec]
            break
    if candidate is None:
        raise NoPositiveSolution(
            "no positive vector in the invariant solution space"
        )
    mu = Measure(candidate).normalized(n)

    left_values = []
    right_values = []
    for a in range(n):
        jl = _ratio(pushforward(q.left_translation(a), mu), mu)
        jr = _ratio(pushforward(q.right_translation(a), mu), mu)
        if jl is None or jr is None:
            raise NoPositiveSolution(
                f"solved measure fails the ratio test at element {a}"
            )
        left_values.append(jl)
        right_values.append(jr)
    left = Cocycle(left_values)
    right = Cocycle(right_values)

    # Independent route to the same conclusion: pushforwards preserve
    # mass, so j(a) * mass = mass pins j(a) = 1 before any solving.
    mass = mu.mass
    forced = all(v == 1 for v in left.values) and all(
        v == 1 for v in right.values
    )
    if not forced:
        raise NoPositiveSolution("ratio test contradicts mass conservation")

    counting_like = dimension == 1 and len(set(basis[0])) == 1
    description = (
        "positive multiples of the counting measure"
        if counting_like
        else f"solution space of dimension {dimension}"
    )
    explanation = {
        "reason": "mass-conservation",
        "statement": (
            "a permutation pushforward preserves total mass, so "
            "(L_a)_*mu = j(a)*mu implies j(a)*mass(mu) = mass(mu); "
            "with 0 < mass(mu) < infinity this forces j(a) = 1 for "
            "every a, and likewise rho(a) = 1"
        ),
        "mass": str(mass),
        "forced_value": "1",
    }
    return QuasiInvariantSolution(
        dimension=dimension,
        basis=tuple(tuple(v) for v in basis),
        measure=mu,
        left_cocycle=left,
        right_cocycle=right,
        degenerate=True,
        description=description,
        explanation=explanation,
    )


def verify_cocycle_relation(q: FiniteQuasigroup, j: Cocycle, rho: Cocycle) -> PairCheck:
    """Check j(x*y) rho(y) = j(x) j(y) rho(y) for all pairs, exactly."""
    n = q.order
    for x in range(n):
        for y in range(n):
            if j[q.table[x][y]] * rho[y] != j[x] * j[y] * rho[y]:
                return PairCheck(False, (x, y))
    return PairCheck(True)


def check_multiplicative(j: Cocycle, q: FiniteQuasigroup) -> PairCheck:
    """Check j(x*y) = j(x) j(y) for all pairs, exactly."""
    n = q.order
    for x in range(n):
        for y in range(n):
            if j[q.table[x][y]] != j[x] * j[y]:
                return PairCheck(False, (x, y))
    return PairCheck(True)
