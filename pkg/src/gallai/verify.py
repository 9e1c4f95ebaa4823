"""Independent certification of path decompositions.

Nothing here knows how a decomposition was produced. `verify_decomposition`
re-derives everything from the host graph's edge set and the claimed paths,
so it can certify output from the decomposer, from a file, or from a fuzzer's
corruption pass alike. `minimum_decomposition` is an exhaustive oracle for
desk-scale graphs: it finds the true minimum number of paths, which brackets
the decomposer's output from below in the acceptance suite.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .graph import Graph, Path

FAILURE_KINDS = (
    "NotAPath",
    "EdgeMissing",
    "EdgeRepeated",
    "EdgeForeign",
    "BoundExceeded",
)


class TooLarge(Exception):
    """The graph exceeds the oracle's edge limit."""


@dataclass(frozen=True)
class Failure:
    kind: str
    detail: str

    def __post_init__(self):
        if self.kind not in FAILURE_KINDS:
            raise ValueError(f"unknown failure kind {self.kind!r}")

    def to_json(self) -> dict:
        return {"kind": self.kind, "detail": self.detail}


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    failures: tuple[Failure, ...]
    path_count: int
    bound: int
    odd_lower_bound: int

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "failures": [f.to_json() for f in self.failures],
            "path_count": self.path_count,
            "bound": self.bound,
            "odd_lower_bound": self.odd_lower_bound,
        }


def _path_vertices(p) -> tuple:
    # Accept Path objects or bare vertex sequences, so corrupted files can be
    # checked without tripping constructor validation first.
    vs = getattr(p, "vertices", p)
    return tuple(vs)


def verify_decomposition(g: Graph, d) -> VerificationReport:
    """Check that d's paths partition E(g) and respect d's claimed bound.

    All failures are reported, not just the first. `d` needs `paths` and
    `claimed_bound` attributes; path entries may be raw vertex sequences.
    """
    failures: list[Failure] = []
    covered: Counter[tuple[int, int]] = Counter()

    paths = [_path_vertices(p) for p in d.paths]
    for i, vs in enumerate(paths):
        if len(vs) == 0:
            failures.append(Failure("NotAPath", f"path {i} is empty"))
            continue
        bad_ids = [v for v in vs if not (0 <= v < g.n)]
        if bad_ids:
            failures.append(
                Failure("NotAPath", f"path {i} names unknown vertex {bad_ids[0]}")
            )
            continue
        seen: set[int] = set()
        for v in vs:
            if v in seen:
                failures.append(
                    Failure("NotAPath", f"path {i} repeats vertex {v}")
                )
                break
            seen.add(v)
        for a, b in zip(vs, vs[1:]):
            if a == b:
                continue
            if g.has_edge(a, b):
                covered[(min(a, b), max(a, b))] += 1
            else:
                failures.append(
                    Failure("EdgeForeign", f"path {i} uses non-edge ({a}, {b})")
                )

    for e in g.edges():
        if e not in covered:
            failures.append(Failure("EdgeMissing", f"edge {e} is not covered"))
    for e in sorted(covered):
        if covered[e] > 1:
            failures.append(
                Failure("EdgeRepeated", f"edge {e} covered {covered[e]} times")
            )

    bound = d.claimed_bound
    if len(paths) > bound:
        failures.append(
            Failure("BoundExceeded", f"{len(paths)} paths exceed the claimed {bound}")
        )

    return VerificationReport(
        valid=not failures,
        failures=tuple(failures),
        path_count=len(paths),
        bound=bound,
        odd_lower_bound=odd_degree_lower_bound(g),
    )


def odd_degree_lower_bound(g: Graph) -> int:
    """Half the number of odd-degree vertices: every one must end some path."""
    return sum(1 for v in range(g.n) if g.degree(v) % 2 == 1) // 2


@dataclass(frozen=True)
class OracleWitness:
    """Minimal decomposition-shaped record, verify_decomposition-compatible."""

    paths: tuple[Path, ...]
    claimed_bound: int


class OracleResult(NamedTuple):
    size: int
    witness: OracleWitness


def minimum_decomposition(g: Graph, limit: int = 16) -> OracleResult:
    """Exact minimum path decomposition by branch and bound over edge masks.

    Branches on every simple path through the lowest-indexed remaining edge,
    memoizes on the set of remaining edges, and prunes with the odd-degree
    lower bound. Deterministic: the witness is the first minimum found under
    sorted adjacency. Raises TooLarge when m exceeds `limit`.
    """
    edges = list(g.edges())
    m = len(edges)
    if m > limit:
        raise TooLarge(f"{m} edges exceed the oracle limit of {limit}")
    if m == 0:
        return OracleResult(0, OracleWitness(paths=(), claimed_bound=0))

    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for i, (a, b) in enumerate(edges):
        adj[a].append((b, 1 << i))
        adj[b].append((a, 1 << i))
    for lst in adj:
        lst.sort()

    def grow(seq: tuple[int, ...], bits: int, mask: int, at_end: bool, out: list):
        out.append((seq, bits))
        tip = seq[-1] if at_end else seq[0]
        for u, bit in adj[tip]:
            if bit & mask and not bit & bits and u not in seq:
                nxt = seq + (u,) if at_end else (u,) + seq
                grow(nxt, bits | bit, mask, at_end, out)

    def candidates(mask: int) -> list[tuple[tuple[int, ...], int]]:
        # Every simple path through the lowest remaining edge, each exactly
        # once: fix the edge's orientation, extend rightward first, then
        # leftward from each right-extension.
        a, b = edges[(mask & -mask).bit_length() - 1]
        rights: list[tuple[tuple[int, ...], int]] = []
        grow((a, b), mask & -mask, mask, True, rights)
        full: list[tuple[tuple[int, ...], int]] = []
        for seq, bits in rights:
            grow(seq, bits, mask, False, full)
        return full

    def lower_bound(mask: int) -> int:
        if not mask:
            return 0
        deg: Counter[int] = Counter()
        mm = mask
        while mm:
            low = mm & -mm
            a, b = edges[low.bit_length() - 1]
            deg[a] += 1
            deg[b] += 1
            mm ^= low
        odd = sum(1 for d in deg.values() if d % 2)
        return max(1, odd // 2)

    memo: dict[int, int] = {0: 0}
    choice: dict[int, tuple[tuple[int, ...], int]] = {}

    def solve(mask: int) -> int:
        if mask in memo:
            return memo[mask]
        best = m + 1
        for seq, bits in candidates(mask):
            rest = mask ^ bits
            if 1 + lower_bound(rest) >= best:
                continue
            total = 1 + solve(rest)
            if total < best:
                best = total
                choice[mask] = (seq, bits)
        memo[mask] = best
        return best

    size = solve((1 << m) - 1)
    paths: list[Path] = []
    mask = (1 << m) - 1
    while mask:
        seq, bits = choice[mask]
        paths.append(Path(seq))
        mask ^= bits
    return OracleResult(size, OracleWitness(paths=tuple(paths), claimed_bound=size))
