"""Generated permutation groups with exact order and membership.

Construction is a deterministic Schreier-Sims: base points are chosen
greedily as the smallest point moved by the generator (or residue) that
forces a new level, transversals are breadth-first in generator order,
and levels are verified deepest-first with a jump back down whenever a
new strong generator appears.  Orders come out as exact Python ints via
the product of fundamental orbit sizes.

The translation groups LMlt(Q), RMlt(Q) and Mlt(Q) of a finite
quasigroup are the intended inputs; lmlt/rmlt/mlt build them from the
rows and columns of the Cayley table.
"""

from __future__ import annotations

from .cayley import FiniteQuasigroup
from .perm import DegreeMismatch, Perm, compose_images, invert_images


class ElementCapExceeded(RuntimeError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"group has more than {cap} elements")


def _build_bsgs(gens: list[tuple], degree: int):
    identity = tuple(range(degree))
    seen = set()
    uniq = []
    for g in gens:
        if g != identity and g not in seen:
            seen.add(g)
            uniq.append(g)
    gens = uniq

    base: list[int] = []
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(min(p for p in range(degree) if g[p] != p))
    level_gens = [
        [g for g in gens if all(g[b] == b for b in base[:i])]
        for i in range(len(base))
    ]
    transversals: list[dict[int, tuple]] = [
        {base[i]: identity} for i in range(len(base))
    ]

    def recompute_transversal(i: int) -> list[int]:
        b = base[i]
        trans = {b: identity}
        queue = [b]
        qi = 0
        gens_i = level_gens[i]
        while qi < len(queue):
            pt = queue[qi]
            qi += 1
            u = trans[pt]
            for s in gens_i:
                img = s[pt]
                if img not in trans:
                    trans[img] = compose_images(s, u)
                    queue.append(img)
        transversals[i] = trans
        return queue

    def strip(g: tuple):
        for i in range(len(base)):
            x = g[base[i]]
            t = transversals[i].get(x)
            if t is None:
                return g, i
            g = compose_images(invert_images(t), g)
        return g, len(base)

    for level in range(len(base)):
        recompute_transversal(level)

    i = len(base) - 1
    while i >= 0:
        orbit_order = recompute_transversal(i)
        trans = transversals[i]
        restart = False
        for pt in orbit_order:
            u = trans[pt]
            for s in level_gens[i]:
                sg = compose_images(invert_images(trans[s[pt]]), compose_images(s, u))
                if sg == identity:
                    continue
                residue, j = strip(sg)
                if residue == identity:
                    continue
                if j == len(base):
                    new_point = min(p for p in range(degree) if residue[p] != p)
                    base.append(new_point)
                    level_gens.append([])
                    transversals.append({new_point: identity})
                for l in range(i + 1, j + 1):
                    level_gens[l].append(residue)
                i = j
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1

    order = 1
    for trans in transversals:
        order *= len(trans)
    return base, level_gens, transversals, order


class PermGroup:
    """Immutable once generate() returns; queries are read-only."""

    __slots__ = ("degree", "generators", "base", "strong_generators", "order",
                 "_transversals", "_base_list")

    def __init__(self, degree, generators, base, level_gens, transversals, order):
        self.degree = degree
        self.generators = tuple(generators)
        self.base = tuple(base)
        seen = set()
        strong = []
        for level in level_gens:
            for g in level:
                if g not in seen:
                    seen.add(g)
                    strong.append(Perm(g))
        self.strong_generators = tuple(strong)
        self.order = order
        self._transversals = tuple(transversals)
        self._base_list = tuple(base)

    def _strip(self, images: tuple):
        g = images
        identity = tuple(range(self.degree))
        for i, b in enumerate(self._base_list):
            t = self._transversals[i].get(g[b])
            if t is None:
                return g, i
            g = compose_images(invert_images(t), g)
        return g, len(self._base_list)

    def membership(self, p: Perm) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatch(
                f"permutation degree {p.degree} != group degree {self.degree}"
            )
        residue, _ = self._strip(p.images)
        return residue == tuple(range(self.degree))

    def __contains__(self, p: Perm) -> bool:
        return self.membership(p)

    def orbit(self, point: int) -> frozenset[int]:
        """Breadth-first closure of one point under the generators."""
        seen = {point}
        queue = [point]
        qi = 0
        gens = [g.images for g in self.generators]
        while qi < len(queue):
            pt = queue[qi]
            qi += 1
            for g in gens:
                img = g[pt]
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
        return frozenset(seen)

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def elements(self, cap: int = 10**6) -> frozenset[tuple]:
        """Every element as an image tuple, by breadth-first products.

        Independent of the stabilizer chain, so tests can cross-check
        order and membership against it.  Raises ElementCapExceeded past
        the cap rather than filling memory.
        """
        identity = tuple(range(self.degree))
        gens = [g.images for g in self.generators]
        seen = {identity}
        frontier = [identity]
        while frontier:
            new_frontier = []
            for u in frontier:
                for g in gens:
                    w = compose_images(g, u)
                    if w not in seen:
                        if len(seen) >= cap:
                            raise ElementCapExceeded(cap)
                        seen.add(w)
                        new_frontier.append(w)
            frontier = new_frontier
        return frozenset(seen)

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"


def generate(gens, degree: int | None = None) -> PermGroup:
    """Group generated by a list of Perm (empty list: trivial group).

    degree is mandatory when gens is empty and must match the generators
    otherwise.
    """
    gens = list(gens)
    if not gens:
        if degree is None:
            raise ValueError("degree required for an empty generator list")
        return PermGroup(degree, [], [], [], [], 1)
    d = gens[0].degree
    for g in gens:
        if g.degree != d:
            raise DegreeMismatch(
                f"generator degrees differ: {g.degree} != {d}"
            )
    if degree is not None and degree != d:
        raise DegreeMismatch(f"requested degree {degree}, generators have {d}")
    tuples = [g.images for g in gens]
    base, level_gens, transversals, order = _build_bsgs(tuples, d)
    return PermGroup(d, gens, base, level_gens, transversals, order)


def lmlt(q: FiniteQuasigroup) -> PermGroup:
    """Group generated by all left translations."""
    return generate([q.left_translation(a) for a in range(q.order)])


def rmlt(q: FiniteQuasigroup) -> PermGroup:
    """Group generated by all right translations."""
    return generate([q.right_translation(a) for a in range(q.order)])


def mlt(q: FiniteQuasigroup) -> PermGroup:
    """Group generated by all left and right translations together."""
    gens = [q.left_translation(a) for a in range(q.order)]
    gens += [q.right_translation(a) for a in range(q.order)]
    return generate(gens)
