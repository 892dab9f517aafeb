from math import comb

import pytest

from regenbound.bounds import cutset_bound, theorem1_bound
from regenbound.code_model import CodeError, check_data_collection, check_exact_repair, dual_parity, extract_h_repair
from regenbound.gf_linalg import rank
from regenbound.instances import (
    InstanceRecipe,
    corpus,
    gen_mbr_repair_by_transfer,
    gen_msr_single_parity,
    gen_space_share,
    parse_recipe,
)


@pytest.mark.parametrize("recipe", corpus(), ids=lambda r: r.label)
def test_corpus_instances_verify(recipe):
    code = recipe.build()
    assert check_data_collection(code).passed
    assert check_exact_repair(code).passed
    p = code.params
    # B = n alpha - rank(H)
    assert p.B == p.length - rank(dual_parity(code).h)
    assert p.B <= theorem1_bound(p.n, p.alpha, p.beta)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
@pytest.mark.parametrize("q", [2, 3, 5])
def test_msr_parameters(n, q):
    code = gen_msr_single_parity(n, q)
    p = code.params
    assert (p.alpha, p.beta, p.B) == (1, 1, n - 1)
    assert check_exact_repair(code).passed
    # dual rank 1 = 2 alpha - beta
    assert rank(dual_parity(code).h) == 1


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_mbr_parameters_meet_cutset(n):
    code = gen_mbr_repair_by_transfer(n)
    p = code.params
    assert (p.alpha, p.beta, p.B) == (n - 1, 1, comb(n, 2))
    assert p.B == cutset_bound(n, n - 1, n - 1, p.alpha, p.beta)
    assert check_data_collection(code).passed and check_exact_repair(code).passed


def test_mbr_generator_is_edge_placement():
    g = gen_mbr_repair_by_transfer(4).generator
    # every message symbol sits on exactly two nodes
    assert [sum(row) for row in g.tolist()] == [2] * 6


def test_msr_over_gf3_negates_sums():
    code = gen_msr_single_parity(4, 3)
    assert code.params.B == 3
    assert all(c.tolist() == [[2]] for c in code.scheme.combine.values())
    assert check_exact_repair(code).passed


def test_space_sharing_examples():
    s = gen_space_share(gen_msr_single_parity(5), gen_mbr_repair_by_transfer(5))
    assert (s.params.alpha, s.params.beta, s.params.B) == (5, 2, 14)
    assert theorem1_bound(5, 5, 2) == 15
    mm = gen_space_share(gen_mbr_repair_by_transfer(5), gen_mbr_repair_by_transfer(5))
    assert mm.params.B == theorem1_bound(5, mm.params.alpha, mm.params.beta) == 20


def test_space_sharing_mismatch():
    with pytest.raises(CodeError):
        gen_space_share(gen_msr_single_parity(4), gen_msr_single_parity(5))


def test_h_repair_of_sums_keeps_block_ranks():
    s = gen_space_share(gen_msr_single_parity(5), gen_mbr_repair_by_transfer(5))
    hr = extract_h_repair(s)
    assert all(rank(hr.block(i, j)) == 2 for i in range(1, 6) for j in range(1, 6) if i != j)


def test_parse_recipe():
    assert parse_recipe(["mbr"], 5, 2) == InstanceRecipe("mbr", 5, 2)
    r = parse_recipe(["sum", "msr", "mbr"], 5, 3)
    assert r.label == "(msr5+mbr5)" and r.build().params.q == 3
    for bad in ([], ["rs"], ["sum", "msr"], ["sum", "msr", "rs"], ["msr", "extra"]):
        with pytest.raises(CodeError):
            parse_recipe(bad, 5, 2)


def test_corpus_covers_all_kinds():
    labels = [r.label for r in corpus(ns=(4,))]
    assert labels == ["msr4", "mbr4", "(msr4+mbr4)", "(mbr4+mbr4)", "(msr4+msr4)"]
