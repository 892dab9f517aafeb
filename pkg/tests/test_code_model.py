import numpy as np
import pytest

from regenbound.code_model import (
    CodeError,
    CodeParams,
    RegenCode,
    RepairScheme,
    check_data_collection,
    check_exact_repair,
    code_from_dict,
    code_to_dict,
    direct_sum,
    dual_parity,
    dumps_code,
    extract_h_repair,
    loads_code,
    zero_code,
)
from regenbound.gf_linalg import FieldMatrix, rank, span
from regenbound.instances import gen_mbr_repair_by_transfer, gen_msr_single_parity


def all_ones_scheme(n, q):
    one = FieldMatrix(q, [[1]])
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    return RepairScheme({p: one for p in pairs}, {p: one for p in pairs})


def test_params_validation():
    with pytest.raises(CodeError):
        CodeParams(5, 3, 4, 1, 1, 2, 4)  # k != n-1
    with pytest.raises(CodeError):
        CodeParams(5, 4, 4, 5, 1, 2, 4)  # alpha > (n-1) beta
    with pytest.raises(CodeError):
        CodeParams(5, 4, 4, 1, 1, 2, 6)  # B > n alpha
    with pytest.raises(ValueError):
        CodeParams(5, 4, 4, 1, 1, 4, 4)  # q not prime
    with pytest.raises(CodeError):
        CodeParams(2, 1, 1, 1, 1, 2, 1)


def test_generator_shape_checked():
    p = CodeParams(5, 4, 4, 1, 1, 2, 4)
    with pytest.raises(CodeError):
        RegenCode(p, FieldMatrix.zeros(2, 4, 4))


def test_single_parity_data_collection():
    code = gen_msr_single_parity(5, 2)
    assert code.generator.tolist()[0] == [1, 0, 0, 0, 1]
    assert check_data_collection(code).passed


def test_duplicated_thick_column_fails_data_collection():
    code = gen_msr_single_parity(5, 2)
    g = code.generator.array.copy()
    g[:, 1] = g[:, 0]
    bad = RegenCode(code.params, FieldMatrix(2, g))
    report = check_data_collection(bad)
    assert not report.passed
    # a subset loses rank exactly when it holds both copies
    assert report.failing_subsets == [(1, 2, 3, 4), (1, 2, 3, 5), (1, 2, 4, 5)]
    assert (2, 3, 4, 5) not in report.failing_subsets


def test_zeroed_thick_column_lists_every_subset_holding_it():
    code = gen_mbr_repair_by_transfer(5)
    g = code.generator.array.copy()
    g[:, :4] = 0
    report = check_data_collection(RegenCode(code.params, FieldMatrix(2, g)))
    assert report.failing_subsets == [(1, 2, 3, 4), (1, 2, 3, 5), (1, 2, 4, 5), (1, 3, 4, 5)]


def test_mbr_data_collection():
    assert check_data_collection(gen_mbr_repair_by_transfer(4)).passed


def test_single_parity_repair_gf2_all_ones():
    code = gen_msr_single_parity(5, 2)
    assert check_exact_repair(code, all_ones_scheme(5, 2)).passed


def test_single_parity_repair_gf3_needs_negation():
    code = gen_msr_single_parity(5, 3)
    report = check_exact_repair(code, all_ones_scheme(5, 3))
    assert not report.passed
    assert report.failing_nodes == [1, 2, 3, 4, 5]
    assert check_exact_repair(code).passed


def test_mbr_repair_by_transfer():
    assert check_exact_repair(gen_mbr_repair_by_transfer(4)).passed


def test_repair_scheme_dimension_mismatch():
    code = gen_mbr_repair_by_transfer(4)
    wrong = all_ones_scheme(4, 2)
    with pytest.raises(CodeError, match=r"D\[.*shape"):
        check_exact_repair(code, wrong)


def test_dual_parity_single_parity():
    code = gen_msr_single_parity(5, 2)
    h = dual_parity(code).h
    assert h.shape == (1, 5)
    assert span(h.T) == span(FieldMatrix(2, [[1, 1, 1, 1, 1]]).T)


def test_dual_parity_trivial_dual():
    g = FieldMatrix.identity(2, 4)
    code = RegenCode(CodeParams(4, 3, 3, 1, 1, 2, 4), g)
    assert dual_parity(code).h.shape == (0, 4)


def test_dual_parity_mbr():
    code = gen_mbr_repair_by_transfer(4)
    h = dual_parity(code).h
    assert rank(h) == 12 - 6
    assert (code.generator @ h.T).is_zero()


def test_dual_parity_rejects_rank_deficient():
    code = gen_msr_single_parity(5, 2)
    g = code.generator.array.copy()
    g[1] = g[0]
    with pytest.raises(CodeError, match="rank deficient"):
        dual_parity(RegenCode(code.params, FieldMatrix(2, g)))


def test_h_repair_single_parity():
    hr = extract_h_repair(gen_msr_single_parity(5, 2))
    assert hr.m.tolist() == [[1] * 5] * 5


@pytest.mark.parametrize("q", [2, 3, 5])
def test_h_repair_single_parity_any_field(q):
    # -C D = -(-1)(1) = 1: the all-ones matrix whatever q is
    hr = extract_h_repair(gen_msr_single_parity(4, q))
    assert hr.m.tolist() == [[1] * 4] * 4


@pytest.mark.parametrize("n", [4, 5])
def test_h_repair_mbr_blocks(n):
    code = gen_mbr_repair_by_transfer(n)
    hr = extract_h_repair(code)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            blk = hr.block(i, j)
            if i == j:
                assert blk == FieldMatrix.identity(2, n - 1)
            else:
                assert rank(blk) == 1
    # every row is a dual codeword
    assert (code.generator @ hr.m.T).is_zero()
    assert span(hr.m.T) == span(dual_parity(code).h.T)


def test_h_repair_rejects_failing_scheme():
    code = gen_msr_single_parity(5, 3)
    with pytest.raises(CodeError):
        extract_h_repair(code, all_ones_scheme(5, 3))


@pytest.mark.parametrize("code", [gen_msr_single_parity(5), gen_mbr_repair_by_transfer(4), gen_mbr_repair_by_transfer(5, 3)])
def test_data_collection_in_dual_form(code):
    # rank(H|_S) = (n-k) alpha for every single thick column
    p = code.params
    h = dual_parity(code).h
    assert rank(code.generator) + rank(h) == p.length
    for j in range(1, p.n + 1):
        assert rank(h.thick_cols([j], p.alpha)) == (p.n - p.k) * p.alpha


def test_direct_sum_msr_mbr():
    s = direct_sum(gen_msr_single_parity(5), gen_mbr_repair_by_transfer(5))
    p = s.params
    assert (p.alpha, p.beta, p.B) == (5, 2, 14)
    assert check_data_collection(s).passed and check_exact_repair(s).passed


def test_direct_sum_mbr_mbr():
    s = direct_sum(gen_mbr_repair_by_transfer(4), gen_mbr_repair_by_transfer(4))
    assert (s.params.alpha, s.params.beta, s.params.B) == (6, 2, 12)
    assert check_data_collection(s).passed and check_exact_repair(s).passed


def test_direct_sum_zero_identity():
    a = gen_mbr_repair_by_transfer(4, 3)
    for s in (direct_sum(a, zero_code(4, 3)), direct_sum(zero_code(4, 3), a)):
        assert s.params == a.params
        assert s.generator == a.generator
        assert s.scheme.download == a.scheme.download and s.scheme.combine == a.scheme.combine


def test_direct_sum_mismatch():
    with pytest.raises(CodeError):
        direct_sum(gen_msr_single_parity(4), gen_msr_single_parity(5))
    with pytest.raises(CodeError):
        direct_sum(gen_msr_single_parity(4, 2), gen_msr_single_parity(4, 3))


def test_json_round_trip():
    code = direct_sum(gen_msr_single_parity(4, 3), gen_mbr_repair_by_transfer(4, 3))
    back = loads_code(dumps_code(code))
    assert back.params == code.params and back.generator == code.generator
    assert back.scheme.download == code.scheme.download
    obj = code_to_dict(code)
    assert set(obj["repair"]) == {"1", "2", "3", "4"}
    assert set(obj["repair"]["2"]) == {"1", "3", "4"}


def test_json_without_repair_section():
    obj = code_to_dict(gen_msr_single_parity(4))
    del obj["repair"]
    assert code_from_dict(obj).scheme is None


@pytest.mark.parametrize(
    "mutate, msg",
    [
        (lambda o: o.pop("G"), "missing keys: G"),
        (lambda o: o["G"][1].append(0), r"G\[1\]: expected 4 entries"),
        (lambda o: o["G"][0].__setitem__(0, 7), r"G\[0\]\[0\]: 7 is not a residue"),
        (lambda o: o["repair"]["3"].pop("1"), r"repair\[3\]\[1\]"),
        (lambda o: o["repair"]["2"]["4"].__setitem__("D", [[1, 0]]), r"repair\[2\]\[4\]\.D\[0\]"),
        (lambda o: o.__setitem__("k", 2), "k = d = n-1"),
    ],
)
def test_json_errors_name_location(mutate, msg):
    obj = code_to_dict(gen_msr_single_parity(4))
    mutate(obj)
    with pytest.raises(CodeError, match=msg):
        code_from_dict(obj)


def test_json_syntax_error_has_line():
    with pytest.raises(CodeError, match="line 2"):
        loads_code('{"q": 2,\n "n": }')


def test_repair_identity_is_the_h_repair_row():
    # x_j - sum C D x_i = 0 for the codeword of every message
    code = gen_mbr_repair_by_transfer(5, 5)
    hr = extract_h_repair(code)
    rng = np.random.default_rng(7)
    msg = FieldMatrix(5, rng.integers(0, 5, (1, code.params.B)))
    word = msg @ code.generator
    assert (hr.m @ word.T).is_zero()
