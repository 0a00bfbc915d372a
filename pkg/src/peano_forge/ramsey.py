"""Finite partition calculus: homogeneous and relatively large sets, the
Ramsey and Paris-Harrington arrow relations decided by exhaustive search over
canonical colorings, the reduction constructions (product, subset criterion,
arity raising, combining), partition Goedel coding, and the fast-growing
hierarchy.

Search strategy: colorings are enumerated as base-r counters over the
n-subsets in colexicographic order, restricted to canonical colorings (colors
first appear in increasing order), which preserves the universally quantified
check while cutting the space by up to r!.  A branch is abandoned as soon as
some fully colored qualifying set becomes monochromatic, so a completed leaf
is a counterexample.  The first counterexample in enumeration order is
canonical and independent of the worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .errors import (
    BadSubset,
    BudgetExceeded,
    EmptySet,
    InvalidPartitionFile,
    NotACode,
    SearchSpaceTooLarge,
    ShapeMismatch,
)
from .godel import decode_seq, encode_seq, pair, unpair

DEFAULT_ENUM_CAP = 2 ** 30
_PARALLEL_MIN = 4096


@lru_cache(maxsize=None)
def subsets_colex(m, n):
    """All n-subsets of {0..m-1} in colexicographic order."""
    return tuple(sorted(combinations(range(m), n), key=lambda s: s[::-1]))


@lru_cache(maxsize=None)
def _rank_map(m, n):
    return {s: i for i, s in enumerate(subsets_colex(m, n))}


class Partition:
    """Total r-coloring of the n-element subsets of {0..m-1}.

    Colors are stored as a tuple indexed by colex rank; a mapping from
    subsets to colors is accepted too.  Instances are not mutated.
    """

    __slots__ = ("m", "n", "r", "colors")

    def __init__(self, m, n, r, colors):
        if n < 1 or n > m:
            raise ShapeMismatch(f"need 1 <= n <= m, got n={n}, m={m}")
        if r < 1:
            raise ShapeMismatch("need at least one color")
        subs = subsets_colex(m, n)
        if isinstance(colors, dict):
            if set(colors) != set(subs):
                raise ShapeMismatch("coloring must cover exactly the n-subsets")
            colors = tuple(colors[s] for s in subs)
        else:
            colors = tuple(colors)
            if len(colors) != len(subs):
                raise ShapeMismatch(
                    f"expected {len(subs)} colors, got {len(colors)}"
                )
        for c in colors:
            if not 0 <= c < r:
                raise ShapeMismatch(f"color {c} outside 0..{r - 1}")
        self.m = m
        self.n = n
        self.r = r
        self.colors = colors

    @classmethod
    def from_function(cls, m, n, r, fn):
        return cls(m, n, r, [fn(s) for s in subsets_colex(m, n)])

    def color(self, subset):
        try:
            return self.colors[_rank_map(self.m, self.n)[tuple(subset)]]
        except KeyError:
            raise BadSubset(f"{tuple(subset)} is not an n-subset of the ground set") from None

    def items(self):
        return zip(subsets_colex(self.m, self.n), self.colors)

    def as_dict(self):
        return dict(self.items())

    def __eq__(self, other):
        return (isinstance(other, Partition)
                and (self.m, self.n, self.r, self.colors)
                == (other.m, other.n, other.r, other.colors))

    def __hash__(self):
        return hash((self.m, self.n, self.r, self.colors))

    def __repr__(self):
        return f"Partition(m={self.m}, n={self.n}, r={self.r})"


@dataclass(frozen=True)
class HomogReport:
    set: tuple
    color: int
    size: int
    relatively_large: bool


# ---------------------------------------------------------------------------
# Homogeneity
# ---------------------------------------------------------------------------


def _check_subset(P, H):
    H = tuple(H)
    if any(H[i] >= H[i + 1] for i in range(len(H) - 1)):
        raise BadSubset("set must be sorted and duplicate-free")
    if H and (H[0] < 0 or H[-1] >= P.m):
        raise BadSubset(f"elements must lie in 0..{P.m - 1}")
    return H


def is_homogeneous(P, H):
    """True iff all n-subsets of H receive one color; needs |H| >= n."""
    H = _check_subset(P, H)
    if len(H) < P.n:
        raise BadSubset(f"set of size {len(H)} has no {P.n}-subsets")
    it = combinations(H, P.n)
    first = P.color(next(it))
    return all(P.color(s) == first for s in it)


def is_relatively_large(H):
    """card(H) >= min(H); the empty set has no minimum."""
    H = tuple(H)
    if not H:
        raise EmptySet("relative largeness needs a nonempty set")
    return len(H) >= min(H)


def find_homogeneous(P, k, require_large=False):
    """Some homogeneous H with |H| >= k (and relatively large when asked),
    searching larger sets first; None when there is none."""
    if k < P.n:
        raise BadSubset(f"need k >= n, got k={k}, n={P.n}")
    for size in range(P.m, k - 1, -1):
        for H in combinations(range(P.m), size):
            if require_large and size < H[0]:
                continue
            it = combinations(H, P.n)
            first = P.color(next(it))
            if all(P.color(s) == first for s in it):
                return HomogReport(H, first, size, size >= H[0])
    return None


def check_subset_criterion(P, H):
    """True iff every (n+1)-subset of H is homogeneous; agrees with
    is_homogeneous whenever |H| >= n+1."""
    H = _check_subset(P, H)
    if len(H) < P.n + 1:
        raise BadSubset(f"need at least {P.n + 1} elements, got {len(H)}")
    return all(is_homogeneous(P, S) for S in combinations(H, P.n + 1))


# ---------------------------------------------------------------------------
# Arrow relations by exhaustive canonical search
# ---------------------------------------------------------------------------


def _qualifying_sets(m, n, k, large):
    """The minimal family whose monochromaticity certifies the relation:
    all k-subsets for plain Ramsey; for the relatively-large variant, the
    sets {a} + rest with |set| = max(k, a), since any qualifying H contains
    one of these."""
    if not large:
        return list(combinations(range(m), k))
    out = []
    for a in range(m):
        size = max(k, a)
        if size > m - a:
            break
        for rest in combinations(range(a + 1, m), size - 1):
            out.append((a,) + rest)
    return out


def _build_triggers(m, n, r, k, large):
    ranks = _rank_map(m, n)
    N = len(ranks)
    triggers = [[] for _ in range(N)]
    for cand in _qualifying_sets(m, n, k, large):
        rk = sorted(ranks[s] for s in combinations(cand, n))
        triggers[rk[-1]].append(tuple(rk))
    return triggers


def _complete_mono(colors, trigs):
    for ranks in trigs:
        c0 = colors[ranks[0]]
        for j in ranks:
            if colors[j] != c0:
                break
        else:
            return True
    return False


def _scan(r, triggers, prefix, N):
    """Depth-first search for the first counterexample coloring extending
    the canonical prefix; None when every extension is pruned."""
    colors = [0] * N
    maxu = [-1] * (N + 1)
    for i, c in enumerate(prefix):
        colors[i] = c
        maxu[i + 1] = c if c > maxu[i] else maxu[i]
        if _complete_mono(colors, triggers[i]):
            return None
    start = len(prefix)
    if start == N:
        return tuple(colors)
    pos = start
    trial = 0
    while True:
        limit = maxu[pos] + 1
        if limit > r - 1:
            limit = r - 1
        if trial > limit:
            pos -= 1
            if pos < start:
                return None
            trial = colors[pos] + 1
            continue
        colors[pos] = trial
        if _complete_mono(colors, triggers[pos]):
            trial += 1
            continue
        maxu[pos + 1] = trial if trial > maxu[pos] else maxu[pos]
        pos += 1
        if pos == N:
            return tuple(colors)
        trial = 0


def _canonical_prefixes(r, depth):
    out = [()]
    for _ in range(depth):
        nxt = []
        for pre in out:
            mu = max(pre, default=-1)
            for c in range(min(r - 1, mu + 1) + 1):
                nxt.append(pre + (c,))
        out = nxt
    return out


def _scan_chunk(params):
    m, n, r, k, large, prefixes = params
    N = math.comb(m, n)
    triggers = _build_triggers(m, n, r, k, large)
    for pre in prefixes:
        res = _scan(r, triggers, pre, N)
        if res is not None:
            return res
    return None


def _validate_arrow_params(m, k, r, n):
    if n < 1:
        raise ValueError("subset size n must be at least 1")
    if not n <= k <= m:
        raise ValueError(f"need n <= k <= m, got n={n}, k={k}, m={m}")
    if r < 1:
        raise ValueError("need at least one color")


def find_counterexample(m, k, r, n, large=False, jobs=1, cap=DEFAULT_ENUM_CAP):
    """The first (in canonical enumeration order) coloring of [m]^n with r
    colors admitting no qualifying homogeneous set, or None when the arrow
    relation holds.  Identical output for every jobs value."""
    _validate_arrow_params(m, k, r, n)
    N = math.comb(m, n)
    required = r ** N
    if cap is not None and required > cap:
        raise SearchSpaceTooLarge(required, cap)
    jobs = max(1, jobs or 1)
    if jobs > 1 and required > _PARALLEL_MIN:
        colors = _parallel_search(m, n, r, k, large, jobs, N)
    else:
        triggers = _build_triggers(m, n, r, k, large)
        colors = _scan(r, triggers, (), N)
    if colors is None:
        return None
    return Partition(m, n, r, colors)


def _parallel_search(m, n, r, k, large, jobs, N):
    depth = 1
    prefixes = _canonical_prefixes(r, depth)
    while len(prefixes) < 4 * jobs and depth < N:
        depth += 1
        prefixes = _canonical_prefixes(r, depth)
    chunk = max(1, math.ceil(len(prefixes) / (4 * jobs)))
    params = [
        (m, n, r, k, large, prefixes[i:i + chunk])
        for i in range(0, len(prefixes), chunk)
    ]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for res in pool.map(_scan_chunk, params):
            if res is not None:
                return res
    return None


def arrow(m, k, r, n, jobs=1, cap=DEFAULT_ENUM_CAP):
    """The Ramsey relation m -> (k)^n_r, decided by full enumeration."""
    return find_counterexample(m, k, r, n, large=False, jobs=jobs, cap=cap) is None


def ph_arrow(m, k, r, n, jobs=1, cap=DEFAULT_ENUM_CAP):
    """The Paris-Harrington relation m ->* (k)^n_r: the homogeneous set must
    additionally be relatively large."""
    return find_counterexample(m, k, r, n, large=True, jobs=jobs, cap=cap) is None


def min_witness(k, r, n, relation="ramsey", max_m=32, jobs=1, cap=DEFAULT_ENUM_CAP):
    """Least m <= max_m satisfying the chosen relation, else None."""
    if relation not in ("ramsey", "ph"):
        raise ValueError("relation must be 'ramsey' or 'ph'")
    rel = arrow if relation == "ramsey" else ph_arrow
    for m in range(max(k, n), max_m + 1):
        if rel(m, k, r, n, jobs=jobs, cap=cap):
            return m
    return None


# ---------------------------------------------------------------------------
# Reduction constructions
# ---------------------------------------------------------------------------


def product_partition(P0, P1):
    """Pair coloring flattened as P0(a)*r1 + P1(a): homogeneous for the
    product iff homogeneous for both factors."""
    if (P0.m, P0.n) != (P1.m, P1.n):
        raise ShapeMismatch("partitions must share ground size and arity")
    colors = tuple(c0 * P1.r + c1 for c0, c1 in zip(P0.colors, P1.colors))
    return Partition(P0.m, P0.n, P0.r * P1.r, colors)


def ceil_sqrt(r):
    """Least s with s*s >= r."""
    if r == 0:
        return 0
    return math.isqrt(r - 1) + 1


def raise_arity(P):
    """Lift an arity-e partition to arity e+1 with at most 1 + 2*ceil_sqrt(r)
    colors, preserving homogeneity for every set of more than e+1 elements.

    With P(a) = s*Q(a) + R(a) for s = ceil_sqrt(r), the tuple b (first e
    elements b') is colored 0 when b is homogeneous for P, (0, R(b')) when b
    is homogeneous for Q but not P, and (1, Q(b')) otherwise; the pairs are
    flattened injectively to 1..2s.
    """
    e, m, r = P.n, P.m, P.r
    if e < 1 or m < e + 2:
        raise ShapeMismatch(f"need ground size >= {e + 2} to raise arity {e}")
    s = ceil_sqrt(r)
    colors = []
    for b in subsets_colex(m, e + 1):
        sub_colors = [P.color(a) for a in combinations(b, e)]
        if all(c == sub_colors[0] for c in sub_colors):
            colors.append(0)
            continue
        quots = [c // s for c in sub_colors]
        bp_color = P.color(b[:e])
        if all(q == quots[0] for q in quots):
            colors.append(1 + bp_color % s)
        else:
            colors.append(1 + s + bp_color // s)
    return Partition(m, e + 1, 1 + 2 * s, colors)


def combine(partitions):
    """One partition of arity max(e_i) equivalent, on every set of more than
    max(e_i) elements, to simultaneous homogeneity for all the inputs; built
    by raising arities to a common value and taking the product."""
    ps = list(partitions)
    if not ps:
        raise ShapeMismatch("nothing to combine")
    m = ps[0].m
    if any(p.m != m for p in ps):
        raise ShapeMismatch("partitions must share the ground set")
    e = max(p.n for p in ps)
    if any(p.n > p.m - 2 for p in ps):
        raise ShapeMismatch("arities must leave room to raise (e <= m-2)")
    if len(ps) == 1:
        return ps[0]
    raised = []
    for p in ps:
        while p.n < e:
            p = raise_arity(p)
        raised.append(p)
    out = raised[0]
    for p in raised[1:]:
        out = product_partition(out, p)
    return out


# ---------------------------------------------------------------------------
# Fast-growing hierarchy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FastGrowingBudget:
    max_result_bits: int
    max_iterations: int

    def __post_init__(self):
        if self.max_result_bits < 1 or self.max_iterations < 1:
            raise ValueError("budget fields must be positive")


DEFAULT_FAST_BUDGET = FastGrowingBudget(max_result_bits=1_000_000,
                                        max_iterations=1_000_000)


def fast_growing(n, x, budget=DEFAULT_FAST_BUDGET):
    """f_0(x) = x+2 and f_{n+1}(x) = f_n iterated x times starting at 2.

    Iterations are counted as applications of the base step f_0 that the
    definition unfolds to, so budgets are machine-independent; exceeding
    either budget raises BudgetExceeded carrying the partial count.
    """
    steps = [0]

    def out_of_budget():
        raise BudgetExceeded(
            f"fast-growing evaluation exceeded its budget after {steps[0]} base steps",
            iterations=steps[0],
        )

    def check_value(v):
        if v.bit_length() > budget.max_result_bits:
            out_of_budget()
        return v

    def apply(level, arg):
        if level == 0:
            steps[0] += 1
            if steps[0] > budget.max_iterations:
                out_of_budget()
            return check_value(arg + 2)
        if level == 1:
            # x applications of the base step from 2 give exactly 2x + 2
            steps[0] += arg
            if steps[0] > budget.max_iterations:
                out_of_budget()
            return check_value(2 * arg + 2)
        v = 2
        for _ in range(arg):
            v = apply(level - 1, v)
        return v

    return apply(n, x)


# ---------------------------------------------------------------------------
# Partition Goedel coding
# ---------------------------------------------------------------------------


def encode_partition(P):
    """Three-step coding: every n-subset becomes a sequence code, every
    (subset code, color) pair is fused with the pairing function, and the
    resulting list (subsets in colex order) becomes one sequence code."""
    items = [pair(encode_seq(list(sub)), c) for sub, c in P.items()]
    return encode_seq(items)


def decode_partition(code, m, n, r):
    """Exact inverse of encode_partition for a matching (m, n, r) header."""
    if n < 1 or n > m or r < 1:
        raise NotACode("impossible header")
    elems = decode_seq(code)
    if len(elems) != math.comb(m, n):  # checked before any subsets materialize
        raise NotACode(
            f"code lists {len(elems)} subsets, header demands {math.comb(m, n)}"
        )
    subs = subsets_colex(m, n)
    colors = []
    for expected, item in zip(subs, elems):
        sub_code, c = unpair(item)
        if tuple(decode_seq(sub_code)) != expected:
            raise NotACode("subset codes do not match the colex enumeration")
        if not 0 <= c < r:
            raise NotACode(f"color {c} outside 0..{r - 1}")
        colors.append(c)
    return Partition(m, n, r, colors)


# ---------------------------------------------------------------------------
# Partition file format
# ---------------------------------------------------------------------------


def partition_to_text(P):
    """Text form: header "m n r", then one "i1 ... in : c" line per subset."""
    lines = [f"{P.m} {P.n} {P.r}"]
    for sub, c in P.items():
        lines.append(" ".join(str(i) for i in sub) + f" : {c}")
    return "\n".join(lines) + "\n"


def partition_from_text(text):
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise InvalidPartitionFile("empty partition file")
    header = lines[0].split()
    if len(header) != 3 or not all(w.isdigit() for w in header):
        raise InvalidPartitionFile(f"bad header line: {lines[0]!r}")
    m, n, r = (int(w) for w in header)
    if n < 1 or n > m or r < 1:
        raise InvalidPartitionFile(f"impossible header m={m} n={n} r={r}")
    seen = {}
    for ln in lines[1:]:
        left, sep, right = ln.partition(":")
        if not sep:
            raise InvalidPartitionFile(f"missing ':' in line {ln!r}")
        parts = left.split()
        if len(parts) != n or not all(w.isdigit() for w in parts):
            raise InvalidPartitionFile(f"bad subset in line {ln!r}")
        sub = tuple(int(w) for w in parts)
        if any(sub[i] >= sub[i + 1] for i in range(n - 1)):
            raise InvalidPartitionFile(f"subset not ascending in line {ln!r}")
        if sub[0] < 0 or sub[-1] >= m:
            raise InvalidPartitionFile(f"subset outside the ground set: {ln!r}")
        color_text = right.strip()
        if not color_text.isdigit():
            raise InvalidPartitionFile(f"bad color in line {ln!r}")
        c = int(color_text)
        if not 0 <= c < r:
            raise InvalidPartitionFile(f"color {c} outside 0..{r - 1}")
        if sub in seen:
            raise InvalidPartitionFile(f"duplicate subset {sub}")
        seen[sub] = c
    if len(seen) != math.comb(m, n):  # cheap check before materializing
        raise InvalidPartitionFile(
            f"{len(seen)} subsets listed, {math.comb(m, n)} required"
        )
    expected = set(subsets_colex(m, n))
    if set(seen) != expected:
        missing = sorted(expected - set(seen))[:3]
        raise InvalidPartitionFile(f"missing subsets, e.g. {missing}")
    return Partition(m, n, r, seen)


def read_partition(path):
    with open(path, "r", encoding="utf-8") as fh:
        return partition_from_text(fh.read())


def write_partition(P, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(partition_to_text(P))
