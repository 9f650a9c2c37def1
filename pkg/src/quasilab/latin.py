"""Latin square enumeration, counting oracles, and seeded sampling.

The enumerator is a cell-by-cell backtracker over row/column bitmasks,
emitting squares in lexicographic row-major order (candidate values are
tried smallest-first).  Two independent counters guard it: a literal
brute-force filter for n <= 4 and a memoized row-by-row dynamic program
keyed on the multiset of column masks, which shares no code with the
backtracker.  Known counts: 1, 2, 12, 576, 161280, 812851200 for
n = 1..6.

Sampling runs the same backtracking shape with seeded shuffled candidate
order.  The resulting distribution over Latin squares is NOT uniform;
reports that consume samples must say so.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache


class OrderTooLarge(ValueError):
    def __init__(self, order: int, limit: int):
        self.order = order
        self.limit = limit
        super().__init__(f"order {order} exceeds the supported limit {limit}")


FULL_ENUMERATION_LIMIT = 6
SAMPLING_LIMIT = 10


def enumerate_latin_squares(n: int, emit=None) -> int:
    """Emit every n x n Latin square once, lexicographically; return count.

    emit receives each square as a tuple of row tuples.  Pass None to
    just count.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    if n > FULL_ENUMERATION_LIMIT:
        raise OrderTooLarge(n, FULL_ENUMERATION_LIMIT)
    count = 0
    for square in _backtrack(n, first_row=None, rng=None):
        count += 1
        if emit is not None:
            emit(square)
    return count


def first_rows(n: int):
    """All possible first rows in lexicographic order.

    The enumeration tree partitions cleanly by first row, which is how
    scans split work across processes: per-first-row counts merge by
    plain addition in this order.
    """
    return itertools.permutations(range(n))


def enumerate_with_first_row(n: int, first_row: tuple[int, ...], emit=None) -> int:
    """Enumerate only the squares whose first row is the given one."""
    if n > FULL_ENUMERATION_LIMIT:
        raise OrderTooLarge(n, FULL_ENUMERATION_LIMIT)
    count = 0
    for square in _backtrack(n, first_row=first_row, rng=None):
        count += 1
        if emit is not None:
            emit(square)
    return count


def _backtrack(n: int, first_row, rng):
    """Generator over Latin squares via row/column bitmask backtracking.

    With rng None, candidates are tried in increasing value order, which
    makes the overall emission order lexicographic row-major.  With an
    rng, candidate order is shuffled per cell (used by sampling, which
    stops after the first hit).
    """
    full = (1 << n) - 1
    grid = [[0] * n for _ in range(n)]
    row_mask = [0] * n
    col_mask = [0] * n
    start = 0
    if first_row is not None:
        for c, v in enumerate(first_row):
            grid[0][c] = v
            row_mask[0] |= 1 << v
            col_mask[c] |= 1 << v
        start = n

    # iterative stack of (pos, remaining-candidates mask or list)
    total_cells = n * n
    pos = start
    choices: list = [None] * (total_cells + 1)

    def candidates(pos):
        r, c = divmod(pos, n)
        avail = full & ~(row_mask[r] | col_mask[c])
        if rng is None:
            return avail
        vals = [v for v in range(n) if avail >> v & 1]
        rng.shuffle(vals)
        return vals

    if start == total_cells:
        yield tuple(tuple(row) for row in grid)
        return
    choices[pos] = candidates(pos)
    while pos >= start:
        r, c = divmod(pos, n)
        if rng is None:
            avail = choices[pos]
            if avail:
                bit = avail & -avail
                choices[pos] = avail ^ bit
                v = bit.bit_length() - 1
            else:
                v = None
        else:
            v = choices[pos].pop() if choices[pos] else None
        if v is None:
            pos -= 1
            if pos >= start:
                rr, cc = divmod(pos, n)
                bit = 1 << grid[rr][cc]
                row_mask[rr] ^= bit
                col_mask[cc] ^= bit
            continue
        grid[r][c] = v
        bit = 1 << v
        row_mask[r] |= bit
        col_mask[c] |= bit
        pos += 1
        if pos == total_cells:
            yield tuple(tuple(row) for row in grid)
            row_mask[r] ^= bit
            col_mask[c] ^= bit
            pos -= 1
        else:
            choices[pos] = candidates(pos)


def _is_latin(rows, n) -> bool:
    target = set(range(n))
    for row in rows:
        if set(row) != target:
            return False
    for c in range(n):
        if {row[c] for row in rows} != target:
            return False
    return True


def count_latin_squares_bruteforce(n: int) -> int:
    """Independent counting oracle, no backtracking.

    n <= 3: filter literally all n^(n*n) integer arrays.  n = 4: filter
    all 24^4 choices of four permutation rows on the column condition
    (row condition already holds by construction).  Larger n refused.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    if n <= 3:
        count = 0
        cells = n * n
        for flat in itertools.product(range(n), repeat=cells):
            rows = [flat[i * n : (i + 1) * n] for i in range(n)]
            if _is_latin(rows, n):
                count += 1
        return count
    if n == 4:
        perms = list(itertools.permutations(range(4)))
        count = 0
        for rows in itertools.product(perms, repeat=4):
            for c in range(4):
                col = {rows[0][c], rows[1][c], rows[2][c], rows[3][c]}
                if len(col) != 4:
                    break
            else:
                count += 1
        return count
    raise OrderTooLarge(n, 4)


def count_latin_squares_memoized(n: int) -> int:
    """Second independent counter: row-by-row DP on column-mask multisets.

    After k rows, each column carries the mask of values it has used.
    The number of ways to finish depends only on the multiset of those
    masks (permuting columns together with their masks is a bijection on
    completions), so states are sorted mask tuples and memoization
    collapses the exponential tree.  Fast through n = 6.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    full = (1 << n) - 1

    @lru_cache(maxsize=None)
    def finish(state: tuple[int, ...]) -> int:
        if state[0] == full:
            return 1
        total = 0
        # enumerate valid next rows: a value per column, distinct across
        # the row and unused in each column
        masks = list(state)

        def place(col: int, used_row: int, acc):
            nonlocal total
            if col == n:
                total += finish(tuple(sorted(acc)))
                return
            avail = full & ~(masks[col] | used_row)
            while avail:
                bit = avail & -avail
                avail ^= bit
                acc.append(masks[col] | bit)
                place(col + 1, used_row | bit, acc)
                acc.pop()

        place(0, 0, [])
        return total

    return finish(tuple([0] * n))


def sample_latin_squares(n: int, count: int, seed: int) -> list[tuple[tuple[int, ...], ...]]:
    """count seeded pseudo-random Latin squares of order n (n <= 10).

    Each draw restarts the backtracker with shuffled candidate order and
    takes the first completion.  Reproducible per seed; the distribution
    is not uniform.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    if n > SAMPLING_LIMIT:
        raise OrderTooLarge(n, SAMPLING_LIMIT)
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        square = next(_backtrack(n, first_row=None, rng=rng))
        out.append(square)
    return out
