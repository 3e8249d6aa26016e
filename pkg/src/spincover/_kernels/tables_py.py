"""Pure-Python multiplication-table kernels.

Same API as the compiled module `_tables`; used as the fallback when the
extension is not built, and directly by the benchmark.  All functions take
a table as a list of rows of 0-based element indices.
"""

from __future__ import annotations

from typing import Optional

#: Orders up to which associativity is checked on every triple.
EXHAUSTIVE_ASSOCIATIVITY_LIMIT = 64

_LCG_MULT = 6364136223846793005
_LCG_INC = 1442695040888963407
_LCG_MASK = (1 << 64) - 1


def find_identity(table: list[list[int]]) -> Optional[int]:
    n = len(table)
    for e in range(n):
        if all(table[e][j] == j for j in range(n)) and all(table[i][e] == i for i in range(n)):
            return e
    return None


def latin_square_violation(table: list[list[int]]) -> Optional[tuple[str, int]]:
    n = len(table)
    full = set(range(n))
    for i in range(n):
        if len(table[i]) != n:
            return ("row-length", i)
        if set(table[i]) != full:
            return ("row", i)
    for j in range(n):
        if {table[i][j] for i in range(n)} != full:
            return ("column", j)
    return None


def inverse_table(table: list[list[int]], identity: int) -> Optional[list[int]]:
    """Two-sided inverses for every element, or None if one is missing."""
    n = len(table)
    inverses = [-1] * n
    for i in range(n):
        for j in range(n):
            if table[i][j] == identity and table[j][i] == identity:
                inverses[i] = j
                break
        if inverses[i] < 0:
            return None
    return inverses


def associativity_violation(
    table: list[list[int]], sample_count: int = 200000
) -> Optional[tuple[int, int, int]]:
    """First non-associative triple, exhaustively for small orders.

    Above :data:`EXHAUSTIVE_ASSOCIATIVITY_LIMIT` a fixed deterministic
    linear-congruential stream picks the triples, so validation stays cheap
    and reproducible for large tables.
    """
    n = len(table)
    if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT:
        for i in range(n):
            row_i = table[i]
            for j in range(n):
                ij = row_i[j]
                row_ij = table[ij]
                row_j = table[j]
                for k in range(n):
                    if row_ij[k] != row_i[row_j[k]]:
                        return (i, j, k)
        return None
    state = 0x9E3779B97F4A7C15
    for _ in range(sample_count):
        state = (state * _LCG_MULT + _LCG_INC) & _LCG_MASK
        i = (state >> 16) % n
        state = (state * _LCG_MULT + _LCG_INC) & _LCG_MASK
        j = (state >> 16) % n
        state = (state * _LCG_MULT + _LCG_INC) & _LCG_MASK
        k = (state >> 16) % n
        if table[table[i][j]][k] != table[i][table[j][k]]:
            return (i, j, k)
    return None


def element_orders(table: list[list[int]], identity: int) -> list[int]:
    n = len(table)
    orders = [0] * n
    for i in range(n):
        power = i
        order = 1
        while power != identity:
            power = table[power][i]
            order += 1
            if order > n:
                raise ValueError(f"element {i} has no finite order; table is not a group")
        orders[i] = order
    return orders


def is_abelian(table: list[list[int]]) -> bool:
    n = len(table)
    return all(table[i][j] == table[j][i] for i in range(n) for j in range(i + 1, n))


def find_isomorphism(
    g_table: list[list[int]],
    h_table: list[list[int]],
    g_identity: int,
    h_identity: int,
) -> Optional[list[int]]:
    """Lexicographically smallest isomorphism between two group tables.

    Backtracking over images in element-index order.  Whenever both factors
    of a product are assigned, the image of the product is forced, so the
    search only branches on elements outside the subgroup generated so far;
    candidate images are constrained to matching element order and tried in
    increasing index order, which makes the first completed mapping the
    lexicographic minimum.
    """
    n = len(g_table)
    if len(h_table) != n:
        return None
    g_orders = element_orders(g_table, g_identity)
    h_orders = element_orders(h_table, h_identity)
    if sorted(g_orders) != sorted(h_orders):
        return None

    phi = [-1] * n
    used = [False] * n
    assigned: list[int] = []

    def force(g_el: int, h_el: int, trail: list[int]) -> bool:
        queue = [(g_el, h_el)]
        while queue:
            x, y = queue.pop()
            if phi[x] >= 0:
                if phi[x] != y:
                    return False
                continue
            if used[y] or g_orders[x] != h_orders[y]:
                return False
            phi[x] = y
            used[y] = True
            trail.append(x)
            assigned.append(x)
            for other in assigned:
                queue.append((g_table[x][other], h_table[y][phi[other]]))
                queue.append((g_table[other][x], h_table[phi[other]][y]))
        return True

    def undo(trail: list[int]) -> None:
        for x in reversed(trail):
            used[phi[x]] = False
            phi[x] = -1
            assigned.pop()

    def search(start: int) -> bool:
        k = start
        while k < n and phi[k] >= 0:
            k += 1
        if k == n:
            return True
        target_order = g_orders[k]
        for candidate in range(n):
            if used[candidate] or h_orders[candidate] != target_order:
                continue
            trail: list[int] = []
            if force(k, candidate, trail) and search(k + 1):
                return True
            undo(trail)
        return False

    root: list[int] = []
    if not force(g_identity, h_identity, root):
        return None
    if not search(0):
        return None
    return list(phi)


def check_isomorphism(
    g_table: list[list[int]],
    h_table: list[list[int]],
    mapping: list[int],
) -> bool:
    """Exhaustive verification that ``mapping`` is a bijective homomorphism."""
    n = len(g_table)
    if len(h_table) != n or len(mapping) != n:
        return False
    if sorted(mapping) != list(range(n)):
        return False
    for i in range(n):
        for j in range(n):
            if mapping[g_table[i][j]] != h_table[mapping[i]][mapping[j]]:
                return False
    return True
