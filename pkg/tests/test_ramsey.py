import random
from itertools import combinations

import pytest

from peano_forge import (
    BadSubset,
    BudgetExceeded,
    EmptySet,
    FastGrowingBudget,
    InvalidPartitionFile,
    NotACode,
    Partition,
    SearchSpaceTooLarge,
    ShapeMismatch,
    arrow,
    ceil_sqrt,
    check_subset_criterion,
    combine,
    decode_partition,
    encode_partition,
    fast_growing,
    find_counterexample,
    find_homogeneous,
    is_homogeneous,
    is_relatively_large,
    min_witness,
    partition_from_text,
    partition_to_text,
    ph_arrow,
    product_partition,
    raise_arity,
)
from oracles import naive_arrow, naive_min_witness

CYCLE5 = {(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)}


def pentagon():
    """The classic triangle-free 2-coloring of the pairs of {0..4}."""
    return Partition.from_function(5, 2, 2, lambda s: 0 if s in CYCLE5 else 1)


def random_partition(rng, m, n, r):
    return Partition.from_function(m, n, r, lambda s: rng.randrange(r))


# --- Partition basics ---

def test_partition_validation():
    with pytest.raises(ShapeMismatch):
        Partition(3, 4, 2, [])
    with pytest.raises(ShapeMismatch):
        Partition(4, 2, 2, [0] * 5)
    with pytest.raises(ShapeMismatch):
        Partition(4, 2, 2, [2] * 6)
    P = Partition(4, 2, 2, [0, 1, 0, 1, 0, 1])
    assert P.color((0, 1)) == 0
    with pytest.raises(BadSubset):
        P.color((0, 5))


def test_partition_from_dict_round_trip():
    P = pentagon()
    assert Partition(5, 2, 2, P.as_dict()) == P


# --- homogeneity and largeness ---

def test_is_homogeneous_examples():
    P = pentagon()
    assert is_homogeneous(P, (0, 1)) is True  # single subset
    const = Partition.from_function(5, 2, 3, lambda s: 2)
    assert is_homogeneous(const, (0, 2, 3, 4)) is True
    Q = Partition.from_function(5, 2, 2, lambda s: 0 if s == (0, 1) else 1)
    assert is_homogeneous(Q, (0, 1, 2)) is False


def test_is_homogeneous_validates_subset():
    P = pentagon()
    with pytest.raises(BadSubset):
        is_homogeneous(P, (3,))  # too small
    with pytest.raises(BadSubset):
        is_homogeneous(P, (1, 7))
    with pytest.raises(BadSubset):
        is_homogeneous(P, (2, 1))


def test_is_relatively_large():
    assert is_relatively_large((0, 5)) is True
    assert is_relatively_large((3, 4, 5)) is True
    assert is_relatively_large((4, 5, 6)) is False
    with pytest.raises(EmptySet):
        is_relatively_large(())


def test_find_homogeneous():
    const = Partition.from_function(6, 2, 2, lambda s: 0)
    rep = find_homogeneous(const, 3, require_large=True)
    assert rep is not None and rep.relatively_large and rep.size >= 3
    assert rep.set == tuple(range(6))  # maximal-first search
    assert find_homogeneous(pentagon(), 3) is None
    P = random_partition(random.Random(1), 5, 2, 3)
    rep = find_homogeneous(P, 2)
    assert rep is not None and rep.size >= 2


# --- the arrow relations against the dumb oracle ---

def test_arrow_golden_values():
    assert arrow(6, 3, 2, 2) is True
    assert arrow(5, 3, 2, 2) is False
    for m in (3, 5, 8):
        assert arrow(m, 3, 1, 2) is (3 <= m)


def test_arrow_matches_naive_oracle_on_grid():
    for n in (1, 2):
        for r in (1, 2):
            for k in range(n, 4):
                for m in range(k, 6):
                    want = naive_arrow(m, k, r, n)
                    assert arrow(m, k, r, n) == want, (m, k, r, n)


def test_ph_matches_naive_oracle_on_grid():
    for n in (1, 2):
        for r in (1, 2):
            for k in range(n, 4):
                for m in range(k, 6):
                    want = naive_arrow(m, k, r, n, large=True)
                    assert ph_arrow(m, k, r, n) == want, (m, k, r, n)


def test_arrow_matches_oracle_more_colors_and_arity():
    # exercises canonical-coloring pruning beyond two colors and pair arity
    for m in range(3, 6):
        assert arrow(m, 3, 3, 2) == naive_arrow(m, 3, 3, 2), m
        assert ph_arrow(m, 3, 3, 2) == naive_arrow(m, 3, 3, 2, large=True), m
    for m in range(4, 6):
        assert arrow(m, 4, 2, 3) == naive_arrow(m, 4, 2, 3), m
        assert ph_arrow(m, 4, 2, 3) == naive_arrow(m, 4, 2, 3, large=True), m


PENTAGON_CEX_TEXT = (
    "5 2 2\n"
    "0 1 : 0\n0 2 : 0\n1 2 : 1\n0 3 : 1\n1 3 : 0\n"
    "2 3 : 1\n0 4 : 1\n1 4 : 1\n2 4 : 0\n3 4 : 0\n"
)


def test_counterexample_is_valid_and_deterministic():
    cex = find_counterexample(5, 3, 2, 2)
    assert cex is not None
    assert find_homogeneous(cex, 3) is None
    # both color classes of the unique extremal coloring are pentagons
    class0 = [s for s, c in cex.items() if c == 0]
    assert len(class0) == 5
    # frozen bytes: the first canonical counterexample never changes
    assert partition_to_text(cex) == PENTAGON_CEX_TEXT
    assert find_counterexample(5, 3, 2, 2, jobs=8) == cex
    assert find_counterexample(5, 3, 2, 2, jobs=3) == cex


def test_ph_counterexample_deterministic_across_jobs():
    a = find_counterexample(5, 3, 2, 2, large=True, jobs=1)
    b = find_counterexample(5, 3, 2, 2, large=True, jobs=8)
    assert a == b


def test_search_space_cap():
    with pytest.raises(SearchSpaceTooLarge) as ei:
        arrow(6, 3, 2, 2, cap=100)
    assert ei.value.required == 2 ** 15
    assert ei.value.cap == 100


def test_min_witness():
    assert min_witness(3, 2, 2, "ramsey", max_m=10) == 6
    assert min_witness(2, 1, 1, "ramsey", max_m=10) == 2
    assert min_witness(3, 2, 2, "ph", max_m=10) == 6
    assert min_witness(4, 2, 2, "ramsey", max_m=8) is None  # R(4,4) = 18
    with pytest.raises(SearchSpaceTooLarge):
        min_witness(4, 2, 2, "ramsey", max_m=10)  # m=9 needs 2^36 colorings
    with pytest.raises(ValueError):
        min_witness(3, 2, 2, "frobnicate", max_m=5)


def test_ph_min_witnesses_match_oracle_goldens():
    # golden values computed by the in-repo brute-force oracle
    golden = {(2, 1, 1): 2, (2, 2, 1): 3, (3, 2, 1): 5, (3, 2, 2): 6}
    for (k, r, n), want in golden.items():
        assert naive_min_witness(k, r, n, True, 8) == want
        assert min_witness(k, r, n, "ph", max_m=8) == want


def test_arrow_monotone_in_ground_size():
    for n in (1, 2):
        for k in range(n, 4):
            prev_r = prev_ph = False
            for m in range(k, 7):
                cur_r = arrow(m, k, 2, n)
                cur_ph = ph_arrow(m, k, 2, n)
                assert not (prev_r and not cur_r)
                assert not (prev_ph and not cur_ph)
                assert not (cur_ph and not cur_r)  # ph strengthens ramsey
                prev_r, prev_ph = cur_r, cur_ph


# --- reduction constructions ---

def test_product_partition():
    rng = random.Random(11)
    P0 = random_partition(rng, 7, 2, 3)
    P1 = random_partition(rng, 7, 2, 2)
    P = product_partition(P0, P1)
    assert P.r == 6
    for _ in range(300):
        size = rng.randint(2, 7)
        H = tuple(sorted(rng.sample(range(7), size)))
        want = is_homogeneous(P0, H) and is_homogeneous(P1, H)
        assert is_homogeneous(P, H) == want
    const = Partition.from_function(7, 2, 1, lambda s: 0)
    Q = product_partition(P0, const)
    for size in (2, 3, 4):
        for H in combinations(range(7), size):
            assert is_homogeneous(Q, H) == is_homogeneous(P0, H)
    with pytest.raises(ShapeMismatch):
        product_partition(P0, random_partition(rng, 6, 2, 2))


def test_check_subset_criterion_equals_homogeneity():
    rng = random.Random(12)
    for _ in range(200):
        P = random_partition(rng, 6, 2, rng.randint(1, 3))
        size = rng.randint(3, 6)
        H = tuple(sorted(rng.sample(range(6), size)))
        assert check_subset_criterion(P, H) == is_homogeneous(P, H)
    assert check_subset_criterion(pentagon(), tuple(range(5))) is False
    with pytest.raises(BadSubset):
        check_subset_criterion(pentagon(), (0, 1))


def test_ceil_sqrt():
    assert ceil_sqrt(0) == 0
    assert ceil_sqrt(7) == 3
    for r in range(0, 200):
        s = ceil_sqrt(r)
        assert s * s >= r and (s == 0 or (s - 1) * (s - 1) < r)
    for r in range(7, 200):
        assert r >= 1 + 2 * ceil_sqrt(r)


def test_raise_arity_constant_case():
    const = Partition.from_function(6, 2, 4, lambda s: 3)
    P2 = raise_arity(const)
    assert set(P2.colors) == {0}


def test_raise_arity_equivalence_exhaustive():
    rng = random.Random(13)
    for m in range(4, 9):
        for r in range(1, 10):
            P = random_partition(rng, m, 2, r)
            P2 = raise_arity(P)
            assert P2.n == 3 and P2.m == m
            assert P2.r == 1 + 2 * ceil_sqrt(r)
            assert len(set(P2.colors)) <= 1 + 2 * ceil_sqrt(r)
            for size in range(4, m + 1):
                for H in combinations(range(m), size):
                    assert is_homogeneous(P2, H) == is_homogeneous(P, H), (m, r, H)


def test_raise_arity_preconditions():
    with pytest.raises(ShapeMismatch):
        raise_arity(Partition.from_function(3, 2, 2, lambda s: 0))


def test_combine_mixed_arities():
    rng = random.Random(14)
    P0 = random_partition(rng, 7, 1, 3)
    P1 = random_partition(rng, 7, 2, 4)
    C = combine([P0, P1])
    assert C.m == 7 and C.n == 2
    for size in range(3, 8):
        for H in combinations(range(7), size):
            want = is_homogeneous(P0, H) and is_homogeneous(P1, H)
            assert is_homogeneous(C, H) == want, H
    # the color count is the product of the raised counts; the classical
    # prod max(r_i, 7) bound is logged for comparison, not asserted
    chain_bound = (1 + 2 * ceil_sqrt(3)) * 4
    assert C.r == chain_bound
    print(f"combine colors: got {C.r}, classical bound {max(3, 7) * max(4, 7)}")


def test_combine_singleton_and_errors():
    rng = random.Random(15)
    P = random_partition(rng, 6, 2, 3)
    assert combine([P]) == P
    with pytest.raises(ShapeMismatch):
        combine([])
    with pytest.raises(ShapeMismatch):
        combine([P, random_partition(rng, 5, 2, 2)])
    with pytest.raises(ShapeMismatch):
        combine([random_partition(rng, 4, 3, 2), random_partition(rng, 4, 2, 2)])


# --- fast-growing hierarchy ---

def test_fast_growing_values():
    assert fast_growing(0, 5) == 7
    assert fast_growing(1, 3) == 8
    assert fast_growing(3, 2) == 65534
    for x in range(0, 101, 9):
        assert fast_growing(1, x) == 2 * x + 2
    for x in range(15):
        assert fast_growing(2, x) >= 2 ** x


def test_fast_growing_budget():
    tight = FastGrowingBudget(max_result_bits=10 ** 6, max_iterations=10 ** 6)
    with pytest.raises(BudgetExceeded) as ei:
        fast_growing(3, 5, tight)
    assert ei.value.iterations is not None and ei.value.iterations > 10 ** 6
    with pytest.raises(BudgetExceeded):
        fast_growing(2, 50, FastGrowingBudget(max_result_bits=16,
                                              max_iterations=10 ** 9))
    with pytest.raises(ValueError):
        FastGrowingBudget(0, 5)


# --- partition coding ---

def test_partition_codec_round_trip():
    rng = random.Random(16)
    shapes = [(3, 1), (4, 1), (5, 1), (7, 1), (3, 2)]
    for _ in range(60):
        m, n = shapes[rng.randrange(len(shapes))]
        r = rng.randint(1, 4)
        P = random_partition(rng, m, n, r)
        assert decode_partition(encode_partition(P), m, n, r) == P


def test_partition_codec_round_trip_wide_subsets():
    # subset codes grow double-exponentially with n, so one instance each
    rng = random.Random(61)
    for m, n in ((4, 2), (3, 3)):
        P = random_partition(rng, m, n, 3)
        assert decode_partition(encode_partition(P), m, n, 3) == P


def test_partition_codec_single_subset():
    P = Partition.from_function(2, 2, 2, lambda s: 1)
    code = encode_partition(P)
    from peano_forge import seq_long
    assert seq_long(code) == 0  # one-element sequence code
    assert decode_partition(code, 2, 2, 2) == P


def test_partition_codec_header_mismatch():
    P = Partition.from_function(4, 1, 2, lambda s: s[0] % 2)
    code = encode_partition(P)
    with pytest.raises(NotACode):
        decode_partition(code, 4, 1, 1)  # color out of range
    with pytest.raises(NotACode):
        decode_partition(code, 5, 1, 2)  # wrong subset count
    with pytest.raises(NotACode):
        decode_partition(code, 4, 1, 0)


def test_partition_codec_tamper_never_silently_reshapes():
    rng = random.Random(17)
    from peano_forge import nth_prime
    for _ in range(25):
        P = random_partition(rng, 4, 1, 3)
        code = encode_partition(P)
        tampered = code * nth_prime(rng.randrange(6))
        try:
            Q = decode_partition(tampered, 4, 1, 3)
        except NotACode:
            continue
        assert (Q.m, Q.n, Q.r) == (4, 1, 3)


# --- partition files ---

def test_partition_file_round_trip():
    P = pentagon()
    text = partition_to_text(P)
    assert partition_from_text(text) == P
    assert text.splitlines()[0] == "5 2 2"


def test_partition_file_line_order_irrelevant():
    lines = partition_to_text(pentagon()).splitlines()
    shuffled = [lines[0]] + list(reversed(lines[1:]))
    assert partition_from_text("\n".join(shuffled)) == pentagon()


def test_partition_file_rejects_garbage():
    with pytest.raises(InvalidPartitionFile):
        partition_from_text("")
    with pytest.raises(InvalidPartitionFile):
        partition_from_text("5 2\n")
    good = partition_to_text(pentagon())
    first_line = good.splitlines()[1]
    with pytest.raises(InvalidPartitionFile):
        partition_from_text(good + first_line + "\n")  # duplicate subset
    with pytest.raises(InvalidPartitionFile):
        partition_from_text("\n".join(good.splitlines()[:-1]) + "\n")  # missing
    with pytest.raises(InvalidPartitionFile):
        partition_from_text(good.replace(": 0", ": 9", 1))  # color range
