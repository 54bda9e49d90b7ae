"""Pure-Python search kernel.

This is the reference implementation of the hot loops; the compiled
module ``_speedups`` implements the identical contract in Cython and
tests assert exact agreement.  All costs are pre-scaled integers (the
caller multiplies table values by the lcm of denominators), so every
value computed here is exact.

Contract of :func:`search`
--------------------------
Single-source shortest path from ``start`` to the empty word on the
implicit peel graph justified by the exact recursion

    N(w) = min over (a, b) of  w(a, b) + N(a^-1 w b),

which holds at every word w (peel the first pair of an optimal
decomposition).

raw mode: states are reduced words, edges are plain peels.  Diagonal
pairs (x, x) are zero-weight conjugation edges; a strict length horizon
keeps the zero-cost orbit finite.  Exact for every instance whose
optimal peel sequence stays inside the horizon; used as the reference
and for validation.

canonical mode: states are lexicographically-least cyclically reduced
conjugacy-class representatives (norms are class functions, so values
transfer).  Zero-weight conjugation edges collapse to self-loops and
vanish, which is what makes large searches tractable.  Because an
optimal decomposition may open with conjugation, pairs are peeled from
EVERY ROTATION of the representative: [a^-1 rot b] = [(b a^-1) rot]
realizes the co-ratio insertion at every cyclic position.  Conjugate
insertions with irreducible padding are not enumerated; canonical
results are therefore guaranteed upper bounds, exactness is validated
against raw mode and the definitional oracle, and release-critical
values are certified separately by their callers.

The A* heuristic charges the cyclically reduced length: a pair (a, b)
changes it by at most |a| + |b| and conjugation does not change it, so
with  mu = max over positive-weight pairs of (|a| + |b|) / w(a, b)
any path to the identity from cyclic length L costs at least L / mu.
Floor-rounding keeps the heuristic integral, admissible and consistent.
"""

from __future__ import annotations

from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Dict, List, Optional, Sequence, Tuple

Wordt = Tuple[int, ...]

IMPLEMENTATION = "pure"


# -- tuple word helpers ------------------------------------------------------


def _concat_reduce(left: Wordt, right: Wordt) -> Wordt:
    nl, k = len(left), 0
    nr = len(right)
    while k < nl and k < nr and left[nl - 1 - k] == -right[k]:
        k += 1
    return left[: nl - k] + right[k:]


def _cyclic_trim(s: Wordt) -> Tuple[Wordt, Wordt]:
    """(core, prefix) with s = prefix * core * prefix^-1, core cyclically reduced."""
    i, j = 0, len(s)
    while j - i >= 2 and s[i] == -s[j - 1]:
        i += 1
        j -= 1
    return s[i:j], s[:i]


def _letter_key(x: int) -> int:
    return (abs(x) << 1) | (1 if x < 0 else 0)


def _least_rotation_index(s: Wordt) -> int:
    """Booth's algorithm on the letter-key ordering."""
    n = len(s)
    if n <= 1:
        return 0
    keys = [_letter_key(x) for x in s]
    doubled = keys + keys
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = doubled[j]
        i = f[j - k - 1]
        while i != -1 and sj != doubled[k + i + 1]:
            if sj < doubled[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != doubled[k + i + 1]:
            if sj < doubled[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def canonical_cyclic(s: Wordt) -> Tuple[Wordt, Wordt]:
    """(canon, sigma) with s = sigma * canon * sigma^-1 exactly."""
    core, prefix = _cyclic_trim(s)
    r = _least_rotation_index(core)
    canon = core[r:] + core[:r]
    return canon, prefix + core[:r]


def cyclic_length(s: Wordt) -> int:
    core, _ = _cyclic_trim(s)
    return len(core)


# -- search ------------------------------------------------------------------


@dataclass
class SearchResult:
    found: bool
    value: Optional[int]  # scaled; None when not found
    target_bound: Optional[int]  # tentative dist of target when unsettled
    pops: int
    exhausted: bool  # frontier emptied under the configured caps
    start_sigma: Optional[Wordt]  # canonicalization conjugator of the start
    # steps, start -> target: (pair_index, rotation_offset, sigma)
    steps: Optional[List[Tuple[int, int, Wordt]]]


def _pair_list(
    alphabet: Sequence[Wordt], weights: Sequence[Sequence[int]]
) -> List[Tuple[int, int]]:
    # b-side index first so pairs (x, 1) come before (1, x): ties in the
    # search then prefer left-action witnesses
    n = len(alphabet)
    return [(i, j) for j in range(n) for i in range(n) if weights[i][j] >= 0]


def search(
    alphabet: Sequence[Wordt],
    weights: Sequence[Sequence[int]],  # -1 marks undefined pairs
    start: Wordt,
    *,
    mu_num: int,
    mu_den: int,
    cost_cap: Optional[int],
    node_horizon: int,
    node_limit: int,
    canonical: bool,
    want_path: bool,
) -> SearchResult:
    inverses = [tuple(-x for x in reversed(a)) for a in alphabet]
    pairs = [
        (i, j, weights[i][j], inverses[i], alphabet[j])
        for i, j in _pair_list(alphabet, weights)
    ]

    def heuristic(clen: int) -> int:
        return (clen * mu_den) // mu_num if mu_num > 0 else 0

    if canonical:
        start_state, start_sigma = canonical_cyclic(start)
    else:
        start_state, start_sigma = start, ()

    target: Wordt = ()
    dist: Dict[Wordt, int] = {start_state: 0}
    settled: set = set()
    pred: Dict[Wordt, Tuple[Wordt, int, int, Wordt]] = {}
    heap: List[Tuple[int, int, Wordt]] = []
    counter = 0
    heappush(heap, (heuristic(cyclic_length(start_state)), counter, start_state))
    pops = 0

    while heap:
        _, _, state = heappop(heap)
        if state in settled:
            continue
        settled.add(state)
        g = dist[state]
        pops += 1
        if state == target:
            steps = _rebuild_steps(pred, start_state, target) if want_path else None
            return SearchResult(True, g, g, pops, False, start_sigma, steps)
        if pops > node_limit:
            return SearchResult(
                False, None, dist.get(target), pops, False, start_sigma, None
            )
        rotations = range(len(state)) if (canonical and state) else (0,)
        for pair_index, (i, j, w, a_inv, b) in enumerate(pairs):
            ng = g + w
            if cost_cap is not None and ng > cost_cap:
                continue
            for rot in rotations:
                rotated = state[rot:] + state[:rot] if rot else state
                raw = _concat_reduce(_concat_reduce(a_inv, rotated), b)
                if canonical:
                    nxt, sigma = canonical_cyclic(raw)
                    clen = len(nxt)
                else:
                    nxt, sigma = raw, ()
                    clen = cyclic_length(nxt)
                if len(nxt) > node_horizon:
                    continue
                old = dist.get(nxt)
                if old is not None and old <= ng:
                    # equal-cost tie: prefer the lowest pair index for
                    # cleaner witnesses (positive weight keeps the
                    # predecessor chain acyclic)
                    if (
                        want_path
                        and old == ng
                        and w > 0
                        and nxt in pred
                        and pair_index < pred[nxt][1]
                    ):
                        pred[nxt] = (state, pair_index, rot, sigma)
                    continue
                nf = ng + heuristic(clen)
                if cost_cap is not None and nf > cost_cap:
                    continue
                dist[nxt] = ng
                if want_path:
                    pred[nxt] = (state, pair_index, rot, sigma)
                counter += 1
                heappush(heap, (nf, counter, nxt))
    return SearchResult(False, None, dist.get(target), pops, True, start_sigma, None)


def _rebuild_steps(
    pred: Dict[Wordt, Tuple[Wordt, int, int, Wordt]],
    start_state: Wordt,
    target: Wordt,
) -> List[Tuple[int, int, Wordt]]:
    steps: List[Tuple[int, int, Wordt]] = []
    cur = target
    while cur != start_state:
        prev, pair_index, rot, sigma = pred[cur]
        steps.append((pair_index, rot, sigma))
        cur = prev
    steps.reverse()
    return steps


def replay_path(
    alphabet: Sequence[Wordt],
    weights: Sequence[Sequence[int]],
    start: Wordt,
    steps: Sequence[Tuple[int, int, Wordt]],
    canonical: bool,
) -> List[Tuple[Wordt, int]]:
    """Replay recorded steps; returns (state, cost-to-target) along the path.

    On an optimal path the cost-to-target of each state is its norm,
    which callers use to warm their norm caches.
    """
    inverses = [tuple(-x for x in reversed(a)) for a in alphabet]
    pairs = _pair_list(alphabet, weights)
    state = canonical_cyclic(start)[0] if canonical else start
    chain = [state]
    costs = [0]
    for pair_index, rot, _sigma in steps:
        i, j = pairs[pair_index]
        rotated = state[rot:] + state[:rot] if rot else state
        raw = _concat_reduce(_concat_reduce(inverses[i], rotated), alphabet[j])
        state = canonical_cyclic(raw)[0] if canonical else raw
        chain.append(state)
        costs.append(costs[-1] + weights[i][j])
    total = costs[-1]
    return [(s, total - c) for s, c in zip(chain, costs)]


# -- Graev interval DP (scaled) ---------------------------------------------


def graev_dp(letters: Wordt, rho: Sequence[Sequence[int]]) -> int:
    """Interval DP for the non-crossing match minimum; scaled-int costs.

    ``rho`` is indexed by letter keys (2|x| + sign bit, basepoint at 0).
    """
    n = len(letters)
    if n == 0:
        return 0
    keys = [_letter_key(x) for x in letters]
    inv_keys = [_letter_key(-x) for x in letters]
    D = [[0] * n for _ in range(n)]
    for length in range(1, n + 1):
        for i in range(0, n - length + 1):
            j = i + length - 1
            row = rho[keys[i]]
            best = row[0] + (D[i + 1][j] if i + 1 <= j else 0)
            for k in range(i + 1, j + 1):
                cand = row[inv_keys[k]]
                if i + 1 <= k - 1:
                    cand += D[i + 1][k - 1]
                if k + 1 <= j:
                    cand += D[k + 1][j]
                if cand < best:
                    best = cand
            D[i][j] = best
    return D[0][n - 1]
