"""Permutations of {0, ..., n-1} in image form.

Composition follows the operator convention (s @ t)(x) = s(t(x)): the
right factor acts first.  Hot loops elsewhere in the package work on raw
image tuples and only wrap them in Perm at API boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass


class DegreeMismatch(ValueError):
    """Operands act on different numbers of points."""


@dataclass(frozen=True)
class Perm:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(tuple(range(degree)))

    @classmethod
    def from_images(cls, images) -> "Perm":
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __matmul__(self, other: "Perm") -> "Perm":
        """Compose: (self @ other)(x) = self(other(x))."""
        if len(self.images) != len(other.images):
            raise DegreeMismatch(
                f"degree {len(self.images)} vs {len(other.images)}"
            )
        return Perm(tuple(self.images[i] for i in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))


def compose_images(s: tuple[int, ...], t: tuple[int, ...]) -> tuple[int, ...]:
    """Raw-tuple composition, right factor first; no validation."""
    return tuple(s[i] for i in t)


def invert_images(s: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(s)
    for i, j in enumerate(s):
        inv[j] = i
    return tuple(inv)
