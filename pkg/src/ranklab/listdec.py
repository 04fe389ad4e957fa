"""List-decodability probes: list sizes at centers, worst-case list
sizes over the whole space, decoding radii, and pigeonhole floors.

List sizes are always measured by scanning codewords against a center,
never by enumerating balls, so the cost per center is O(|C|) rank
computations.  Exhaustive scans sweep every center in lexicographic
order and are invariant under worker partitioning: ties on the maximal
list size resolve to the first-scanned center no matter how the space
was chunked.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial

from .codes import Code, enumerate_codewords
from .errors import EnumerationCapExceeded
from .rankmetric import (
    DEFAULT_ENUM_CAP,
    RankVector,
    _iter_rank_u_matrices,
    _rank_lookup,
    ball_volume,
    matrix_to_vector,
    rank_of_vector,
    vector_from_index,
)
from .rng import make_rng

DEFAULT_MC_CENTERS = 1000
DEFAULT_NEIGHBORHOOD_CAP = 4096


@dataclass(frozen=True)
class ListReport:
    """Worst list size found for one code at one radius."""

    radius_s: int
    l_max: int
    argmax_center: RankVector
    exhaustive: bool
    centers_tried: int
    pigeonhole_lb: int

    def as_dict(self) -> dict:
        return {
            "radius_s": self.radius_s,
            "l_max": self.l_max,
            "argmax_center": list(self.argmax_center.entries),
            "exhaustive": self.exhaustive,
            "centers_tried": self.centers_tried,
            "pigeonhole_lb": self.pigeonhole_lb,
        }


def pigeonhole_lower_bound(code_size: int, q: int, m: int, n: int, s: int) -> int:
    """ceil(|C| * |B(0, s)| / q^(mn)): some center must see this many words."""
    if code_size < 1:
        raise ValueError("code size must be positive")
    ball = ball_volume(q, m, n, s).exact
    space = q ** (m * n)
    return -((-code_size * ball) // space)


def pigeonhole_loose_form(code_size: int, q: int, m: int, n: int, s: int) -> Fraction:
    """The looser closed form |C| * q^(sm) / q^(mn).

    Equals q^(nm(R + rho - 1)) for rho = s/n and R = log_q|C|/(mn); it
    drops the q^(s(n-s)) factor of the exact ball lower bound, so it
    exceeds 1 exactly when R + rho > 1.
    """
    if code_size < 1:
        raise ValueError("code size must be positive")
    if not 0 <= s <= n:
        raise ValueError(f"need 0 <= s <= n, got s = {s}")
    return Fraction(code_size * q ** (s * m), q ** (m * n))


def _scan_codewords(code: Code, cap: int) -> list[tuple[int, ...]]:
    return [w.entries for w in enumerate_codewords(code, cap)]


def list_size_at(code: Code, center: RankVector, s: int, cap: int = DEFAULT_ENUM_CAP) -> int:
    """Number of codewords within rank distance s of the center."""
    if center.ctx != code.ctx or center.n != code.n:
        raise ValueError("center does not live in the code's ambient space")
    if not 0 <= s <= code.n:
        raise ValueError(f"need 0 <= s <= n, got s = {s}")
    ctx = code.ctx
    sub = ctx.sub
    count = 0
    for w in enumerate_codewords(code, cap):
        diff = RankVector(ctx, tuple(sub(a, b) for a, b in zip(w.entries, center.entries)))
        if rank_of_vector(diff) <= s:
            count += 1
    return count


def _count_at(ctx, words, center_entries, s, lookup) -> int:
    sub = ctx.sub
    order = ctx.order
    count = 0
    if lookup is not None:
        for w in words:
            idx = 0
            for a, b in zip(w, center_entries):
                idx = idx * order + sub(a, b)
            if lookup[idx] <= s:
                count += 1
        return count
    for w in words:
        diff = RankVector(ctx, tuple(sub(a, b) for a, b in zip(w, center_entries)))
        if rank_of_vector(diff) <= s:
            count += 1
    return count


def _scan_chunk(code: Code, s: int, cap: int, bounds: tuple[int, int]) -> tuple[int, int]:
    """Best (list size, first index) over a contiguous index range of centers."""
    lo, hi = bounds
    ctx = code.ctx
    n = code.n
    words = _scan_codewords(code, cap)
    lookup = _rank_lookup(ctx, n)
    best, best_idx = -1, -1
    order = ctx.order
    entries = [0] * n
    for idx in range(lo, hi):
        rem = idx
        for j in range(n - 1, -1, -1):
            rem, entries[j] = divmod(rem, order)
        count = _count_at(ctx, words, entries, s, lookup)
        if count > best:
            best, best_idx = count, idx
    return best, best_idx


def max_list_size(
    code: Code,
    s: int,
    mode: str = "exhaustive",
    *,
    centers: int = DEFAULT_MC_CENTERS,
    seed: int = 0,
    cap: int = DEFAULT_ENUM_CAP,
    workers: int = 1,
    neighborhood_cap: int = DEFAULT_NEIGHBORHOOD_CAP,
) -> ListReport:
    """Worst-case list size at radius s.

    Args:
        code: any code object.
        s: rank radius, 0 <= s <= n.
        mode: "exhaustive" sweeps every center of the ambient space
            (requires q^(mn) <= cap); "montecarlo" scores the codewords
            themselves, their low-rank perturbations when that set is
            small, and ``centers`` uniform random centers, reporting a
            lower bound flagged exhaustive=False.
        seed: RNG seed for Monte Carlo centers.
        workers: process count for partitioning the exhaustive sweep;
            the report is identical for any worker count.

    Returns:
        A ListReport; ties for the maximum resolve to the first center
        in lexicographic scan order.
    """
    if not 0 <= s <= code.n:
        raise ValueError(f"need 0 <= s <= n, got s = {s}")
    ctx = code.ctx
    n = code.n
    space = ctx.order**n
    lb = pigeonhole_lower_bound(code.size, ctx.base.q, ctx.m, n, s)
    if mode == "exhaustive":
        if space > cap:
            raise EnumerationCapExceeded(
                f"{space} centers to scan, above the cap of {cap}; use montecarlo"
            )
        if workers > 1:
            chunk = (space + workers - 1) // workers
            ranges = [(i * chunk, min((i + 1) * chunk, space)) for i in range(workers)]
            ranges = [r for r in ranges if r[0] < r[1]]
            with ProcessPoolExecutor(max_workers=workers) as ex:
                results = list(ex.map(partial(_scan_chunk, code, s, cap), ranges))
            best, best_idx = -1, -1
            for b, idx in results:
                if b > best or (b == best and idx < best_idx):
                    best, best_idx = b, idx
        else:
            best, best_idx = _scan_chunk(code, s, cap, (0, space))
        return ListReport(
            radius_s=s,
            l_max=best,
            argmax_center=vector_from_index(ctx, n, best_idx),
            exhaustive=True,
            centers_tried=space,
            pigeonhole_lb=lb,
        )
    if mode != "montecarlo":
        raise ValueError(f"unknown mode {mode!r}")
    words = _scan_codewords(code, cap)
    lookup = _rank_lookup(ctx, n)
    candidates: dict[tuple[int, ...], None] = {}
    bv = ball_volume(ctx.base.q, ctx.m, n, s).exact
    if code.size * bv <= min(neighborhood_cap, cap):
        # every center that sees any codeword at all lives in this set,
        # so small instances get the true maximum even in this mode
        perturbations = [
            matrix_to_vector(M, ctx).entries
            for u in range(s + 1)
            for M in _iter_rank_u_matrices(ctx.base, ctx.m, n, u)
        ]
        add = ctx.add
        for w in words:
            for p in perturbations:
                candidates.setdefault(tuple(add(a, b) for a, b in zip(w, p)), None)
    else:
        for w in words:
            candidates.setdefault(w, None)
    rng = make_rng(seed)
    for _ in range(centers):
        candidates.setdefault(vector_from_index(ctx, n, rng.randrange(space)).entries, None)
    best, best_entries = -1, None
    for entries in candidates:
        count = _count_at(ctx, words, entries, s, lookup)
        if count > best:
            best, best_entries = count, entries
    return ListReport(
        radius_s=s,
        l_max=best,
        argmax_center=RankVector(ctx, best_entries),
        exhaustive=False,
        centers_tried=len(candidates),
        pigeonhole_lb=lb,
    )


def is_list_decodable(code: Code, s: int, list_cap: int, **kwargs) -> bool:
    """Whether every radius-s ball holds at most ``list_cap`` codewords.

    Only meaningful as a certificate in exhaustive mode; in Monte Carlo
    mode a True answer is merely "no violation found".
    """
    if list_cap < 1:
        raise ValueError("list cap must be at least 1")
    return max_list_size(code, s, **kwargs).l_max <= list_cap


def decoding_radius(code: Code, list_cap: int, **kwargs) -> Fraction:
    """Largest s/n such that the code is (s/n, list_cap)-list-decodable."""
    if list_cap < 1:
        raise ValueError("list cap must be at least 1")
    best = 0
    for s in range(code.n + 1):
        if max_list_size(code, s, **kwargs).l_max <= list_cap:
            best = s
        else:
            break
    return Fraction(best, code.n)


def radius_from_fraction(rho, n: int) -> int:
    """Quantize a radius fraction onto the lattice: s = floor(rho * n)."""
    rho = Fraction(rho)
    if not 0 <= rho <= 1:
        raise ValueError(f"rho must lie in [0, 1], got {rho}")
    return math.floor(rho * n)
