"""Small-case combinatorial oracles.

Triangle-free edge colorings of K_N and sum-free partitions of [1, N] are
searched by backtracking with bitset pruning and color-order symmetry
breaking. A search either finds a witness, proves none exists, or raises
:class:`BudgetExceeded`; the last outcome is not a mathematical claim.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Mapping

from .errors import BudgetExceeded, DomainError
from .exact_arith import as_natural, floor_factorial_e

__all__ = [
    "EdgeColoring",
    "MonoTriangle",
    "RamseySearchResult",
    "find_mono_triangle",
    "search_good_coloring",
    "exists_good_coloring",
    "ramsey_number",
    "verify_witness",
    "SchurPartition",
    "SchurViolation",
    "SchurResult",
    "EXCEEDS_LIMIT",
    "find_schur_violation",
    "schur_search",
    "schur_number",
    "check_schur_ramsey_link",
    "cubic_residue_coloring_k16",
    "double_c5_coloring",
]

DEFAULT_BUDGET = 5_000_000
# fixed split depth, independent of worker count, so node counts never depend on it
FRONTIER_DEPTH = 6
EXCEEDS_LIMIT = "exceeds limit"


# ---------------------------------------------------------------- colorings


@dataclass(frozen=True)
class EdgeColoring:
    """Coloring of the edges of K_N; ``colors`` maps (i, j), i < j, to a color."""

    N: int
    n: int
    colors: Mapping[tuple, int]

    def __post_init__(self):
        as_natural(self.N, "N")
        as_natural(self.n, "n")
        colors = {}
        for (i, j), c in self.colors.items():
            if not (0 <= i < j < self.N):
                raise DomainError(f"edge ({i}, {j}) is not a pair i < j < {self.N}")
            if not (isinstance(c, int) and 0 <= c < self.n):
                raise DomainError(f"color {c!r} of edge ({i}, {j}) not in [0, {self.n})")
            colors[(i, j)] = c
        expected = self.N * (self.N - 1) // 2
        if len(colors) != expected:
            raise DomainError(f"{len(colors)} edges colored, K_{self.N} has {expected}")
        object.__setattr__(self, "colors", colors)

    @classmethod
    def from_edge_list(cls, N, n, edge_colors):
        """Build from colors listed in the search's edge order."""
        return cls(N, n, dict(zip(_edge_order(N), edge_colors)))

    def color(self, i, j):
        return self.colors[(i, j) if i < j else (j, i)]

    def color_adjacency(self):
        """adj[c][v] is the bitset of vertices joined to v in color c."""
        adj = [[0] * self.N for _ in range(self.n)]
        for (i, j), c in self.colors.items():
            adj[c][i] |= 1 << j
            adj[c][j] |= 1 << i
        return adj

    def colors_used(self):
        return len(set(self.colors.values()))


@dataclass(frozen=True)
class MonoTriangle:
    vertices: tuple
    color: int


def find_mono_triangle(coloring):
    """Lexicographically smallest monochromatic triangle, or None."""
    adj = coloring.color_adjacency()
    N = coloring.N
    for i in range(N):
        for j in range(i + 1, N):
            c = coloring.colors[(i, j)]
            common = adj[c][i] & adj[c][j] & ~((1 << (j + 1)) - 1)
            if common:
                k = (common & -common).bit_length() - 1
                return MonoTriangle((i, j, k), c)
    return None


def verify_witness(coloring, claimed_n, claimed_N):
    """True iff ``coloring`` certifies R_{claimed_n}(3) > claimed_N."""
    return (
        coloring.N == claimed_N
        and coloring.colors_used() <= claimed_n
        and all(c < claimed_n for c in coloring.colors.values())
        and find_mono_triangle(coloring) is None
    )


def _edge_order(N):
    # by larger endpoint, then smaller: K_m is complete before K_{m+1} starts
    return [(i, j) for j in range(1, N) for i in range(j)]


@dataclass(frozen=True)
class RamseySearchResult:
    N: int
    n: int
    coloring: EdgeColoring | None
    nodes: int

    @property
    def found(self):
        return self.coloring is not None


class _Budget:
    __slots__ = ("limit", "nodes")

    def __init__(self, limit):
        self.limit = limit
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.limit:
            raise BudgetExceeded(self.limit, self.nodes)


def _place(adj, i, j, c):
    if adj[c][i] & adj[c][j]:
        return False
    adj[c][i] |= 1 << j
    adj[c][j] |= 1 << i
    return True


def _unplace(adj, i, j, c):
    adj[c][i] &= ~(1 << j)
    adj[c][j] &= ~(1 << i)


def _replay(N, n, edges, prefix):
    adj = [[0] * N for _ in range(n)]
    for (i, j), c in zip(edges, prefix):
        if not _place(adj, i, j, c):
            raise DomainError("prefix contains a monochromatic triangle")
    return adj


def _extend(N, n, edges, adj, colors, stop, budget):
    """Depth-first completion of ``colors`` up to ``stop`` edges.

    Yields each valid prefix of length ``stop`` in lexicographic order.
    """
    depth = len(colors)
    if depth == stop:
        yield list(colors)
        return
    i, j = edges[depth]
    allowed = min(n, (max(colors) + 2) if colors else 1)
    for c in range(allowed):
        if not _place(adj, i, j, c):
            continue
        budget.tick()
        colors.append(c)
        yield from _extend(N, n, edges, adj, colors, stop, budget)
        colors.pop()
        _unplace(adj, i, j, c)


def _solve_subtree(args):
    """Worker entry: first completion under ``prefix`` as (colors | None, nodes)."""
    N, n, prefix, limit = args
    edges = _edge_order(N)
    adj = _replay(N, n, edges, prefix)
    budget = _Budget(limit)
    try:
        for full in _extend(N, n, edges, adj, list(prefix), len(edges), budget):
            return full, budget.nodes
    except BudgetExceeded:
        return "exceeded", budget.nodes
    return None, budget.nodes


def search_good_coloring(N, n, budget=DEFAULT_BUDGET, workers=1):
    """Search for an n-coloring of K_N with no monochromatic triangle.

    The top ``FRONTIER_DEPTH`` edges are expanded first; each resulting
    subtree is then solved (in parallel when ``workers > 1``). The reported
    witness is the first successful subtree in lexicographic order and the
    node count is summed in that order, so the result does not depend on
    ``workers``.
    """
    as_natural(N, "N")
    as_natural(n, "n")
    if n < 1:
        raise DomainError("need at least one color")
    edges = _edge_order(N)
    top = _Budget(budget)
    stop = min(len(edges), FRONTIER_DEPTH)
    frontier = list(_extend(N, n, edges, _replay(N, n, edges, []), [], stop, top))
    if stop == len(edges):
        coloring = EdgeColoring.from_edge_list(N, n, frontier[0]) if frontier else None
        return RamseySearchResult(N, n, coloring, top.nodes)

    remaining = budget - top.nodes
    tasks = [(N, n, tuple(prefix), remaining) for prefix in frontier]
    total = top.nodes

    def consume(outcomes):
        nonlocal total
        for colors, nodes in outcomes:
            if colors == "exceeded":
                raise BudgetExceeded(budget, total + nodes)
            total += nodes
            if total > budget:
                raise BudgetExceeded(budget, total)
            if colors is not None:
                return EdgeColoring.from_edge_list(N, n, colors)
        return None

    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            coloring = consume(pool.map(_solve_subtree, tasks))
            pool.shutdown(cancel_futures=True)
    else:
        coloring = None
        for task in tasks:
            # shrink later caps sequentially; the verdict is the same as capping at `remaining`
            colors, nodes = _solve_subtree(task[:3] + (budget - total,))
            coloring = consume([(colors, nodes)])
            if coloring is not None:
                break
    return RamseySearchResult(N, n, coloring, total)


def exists_good_coloring(N, n, budget=DEFAULT_BUDGET, workers=1):
    """A triangle-free n-coloring of K_N, or None if none exists.

    Raises BudgetExceeded when the search cannot decide within ``budget``.
    """
    return search_good_coloring(N, n, budget, workers).coloring


def ramsey_number(n, budget=DEFAULT_BUDGET, workers=1, max_N=None):
    """Establish R_n(3) by searching N = 1, 2, ... until no good coloring exists.

    Returns (value, witness at value - 1, total nodes). ``budget`` applies to
    each N separately.
    """
    witness, total, N = None, 0, 1
    while max_N is None or N <= max_N:
        result = search_good_coloring(N, n, budget, workers)
        total += result.nodes
        if not result.found:
            return N, witness, total
        witness = result.coloring
        N += 1
    raise BudgetExceeded(budget, total)


def double_c5_coloring():
    """The pentagon / pentagram 2-coloring of K_5."""
    colors = {}
    for i in range(5):
        for j in range(i + 1, 5):
            colors[(i, j)] = 0 if (j - i) in (1, 4) else 1
    return EdgeColoring(5, 2, colors)


def cubic_residue_coloring_k16():
    """3-coloring of K_16 over GF(16) by cubic-residue coset of x - y.

    GF(16) = GF(2)[t]/(t^4 + t + 1), whose multiplicative group is generated
    by t. Subtraction is XOR; the color is the discrete log mod 3.
    """
    log = {}
    x = 1
    for e in range(15):
        log[x] = e
        x <<= 1
        if x & 0b10000:
            x ^= 0b10011
    colors = {(i, j): log[i ^ j] % 3 for j in range(16) for i in range(j)}
    return EdgeColoring(16, 3, colors)


# -------------------------------------------------------------------- Schur


@dataclass(frozen=True)
class SchurPartition:
    """Assignment of each integer 1..N to a block in [0, n)."""

    N: int
    n: int
    blocks: Mapping[int, int]

    def __post_init__(self):
        as_natural(self.N, "N")
        as_natural(self.n, "n")
        blocks = dict(self.blocks)
        if sorted(blocks) != list(range(1, self.N + 1)):
            raise DomainError(f"blocks must assign exactly the integers 1..{self.N}")
        for v, b in blocks.items():
            if not (isinstance(b, int) and 0 <= b < self.n):
                raise DomainError(f"block {b!r} of {v} not in [0, {self.n})")
        object.__setattr__(self, "blocks", dict(sorted(blocks.items())))

    @classmethod
    def from_sets(cls, sets):
        blocks = {v: b for b, members in enumerate(sets) for v in members}
        return cls(len(blocks), len(sets), blocks)

    def as_sets(self):
        out = [[] for _ in range(self.n)]
        for v, b in self.blocks.items():
            out[b].append(v)
        return out


@dataclass(frozen=True)
class SchurViolation:
    x: int
    y: int
    z: int


def find_schur_violation(partition):
    """Smallest x + y = z (x <= y, x = y allowed) inside one block, by (z, x)."""
    blocks = partition.blocks
    for z in range(2, partition.N + 1):
        for x in range(1, z // 2 + 1):
            if blocks[x] == blocks[z - x] == blocks[z]:
                return SchurViolation(x, z - x, z)
    return None


@dataclass(frozen=True)
class SchurResult:
    n: int
    limit: int
    value: int | str
    witness: SchurPartition | None
    nodes: int

    @property
    def exceeds_limit(self):
        return self.value == EXCEEDS_LIMIT


def schur_search(n, limit, budget=None):
    """Largest N <= limit with a sum-free partition of [1, N] into n blocks.

    Integers are placed in increasing order; integer 1 goes to block 0 and
    block b+1 is opened only after block b. Each block keeps a bitset of
    integers it may no longer receive; once every block is open, a branch
    is cut when some integer up to best + 1 is forbidden everywhere, since
    it can no longer beat the best depth found so far.
    """
    as_natural(n, "n")
    as_natural(limit, "limit")
    if n < 1 or limit < 1:
        raise DomainError("need n >= 1 and limit >= 1")
    members = [0] * n
    forbidden = [0] * n
    assign = [0] * (limit + 1)
    counter = _Budget(math.inf if budget is None else budget)
    best = 0
    best_assign = []

    def descend(x, opened):
        nonlocal best, best_assign
        counter.tick()
        if x - 1 > best:
            best = x - 1
            best_assign = assign[1:x]
            if best == limit:
                return True
        dead = forbidden[0]
        for b in range(1, n):
            dead &= forbidden[b]
        if dead >> x & ((1 << (best + 2 - x)) - 1):
            return False
        for b in range(min(opened + 1, n)):
            if forbidden[b] >> x & 1:
                continue
            old_members, old_forbidden = members[b], forbidden[b]
            members[b] = old_members | (1 << x)
            forbidden[b] = old_forbidden | (members[b] << x)
            assign[x] = b
            if descend(x + 1, max(opened, b + 1)):
                return True
            members[b], forbidden[b] = old_members, old_forbidden
        return False

    descend(1, 0)
    witness = SchurPartition(best, n, {v: b for v, b in enumerate(best_assign, start=1)})
    value = EXCEEDS_LIMIT if best == limit else best
    return SchurResult(n, limit, value, witness, counter.nodes)


def schur_number(n, limit, budget=None):
    """S(n) if it is below ``limit``, else ``EXCEEDS_LIMIT``."""
    return schur_search(n, limit, budget).value


def check_schur_ramsey_link(n, kb, computed_S):
    """computed_S <= R_n(3) - 2 and, for n >= 2, computed_S <= floor(n! e) - 1."""
    if computed_S > kb.upper(n) - 2:
        return False
    if n >= 2 and computed_S > floor_factorial_e(n) - 1:
        return False
    return True
