from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from adaptive_ramsey.bounds import (
    AdaptiveBound,
    KnowledgeBase,
    KnowledgeBaseEntry,
    adaptive_from_anchor,
    apply_assumption,
    best_bounds_table,
    check_optimality_remark,
    closed_form_bound,
    gg_step,
    normalize_kb,
    parse_kb,
    propagate_recursive,
    schur_upper,
)
from adaptive_ramsey.errors import DomainError, FormatError
from adaptive_ramsey.exact_arith import floor_factorial_e


@pytest.mark.parametrize("n, prev, expected", [(3, 6, 17), (5, 62, 307), (2, 3, 6)])
def test_gg_step(n, prev, expected):
    assert gg_step(n, prev) == expected


def test_gg_step_rejects_n_below_2():
    with pytest.raises(DomainError):
        gg_step(1, 3)


@pytest.mark.parametrize(
    "k, u, a, q",
    [
        (4, 62, 4, Fraction(1, 6)),
        (4, 51, 15, Fraction(5, 8)),
        (4, 54, 12, Fraction(1, 2)),
        (5, 162, 165, Fraction(11, 8)),
        (5, 227, 100, Fraction(5, 6)),
    ],
)
def test_adaptive_from_anchor(k, u, a, q):
    b = adaptive_from_anchor(k, u)
    assert (b.a, b.q) == (a, q)


def test_adaptive_from_anchor_rejects_weak_anchor():
    with pytest.raises(DomainError, match="unconditional"):
        adaptive_from_anchor(4, 67)
    assert adaptive_from_anchor(4, 66).a == 0


def test_adaptive_bound_requires_q_equal_a_over_k_factorial():
    with pytest.raises(DomainError):
        AdaptiveBound(4, 4, Fraction(1, 5))


@pytest.mark.parametrize(
    "anchor, n, expected",
    [((4, 62), 4, 62), ((4, 62), 5, 307), ((4, 51), 4, 51), ((4, 62), 6, 1838)],
)
def test_closed_form_bound(anchor, n, expected):
    assert closed_form_bound(adaptive_from_anchor(*anchor), n) == expected


def test_closed_form_bound_rejects_n_below_k():
    with pytest.raises(DomainError, match="n >= k"):
        closed_form_bound(adaptive_from_anchor(4, 62), 3)


@pytest.mark.parametrize("k, u, n, expected", [(4, 62, 5, 307), (4, 62, 4, 62), (2, 6, 4, 66)])
def test_propagate_recursive(k, u, n, expected):
    assert propagate_recursive(k, u, n) == expected


def test_propagate_from_r2_reaches_unconditional_bound():
    assert propagate_recursive(2, 6, 4) == floor_factorial_e(4) + 1


@pytest.mark.parametrize("k, u", [(4, 62), (4, 51), (2, 6)])
def test_optimality_remark_examples(k, u):
    assert check_optimality_remark(k, u)


def test_agreement_over_known_ranges(kb):
    closed = normalize_kb(kb, 6)
    for k in range(2, 7):
        entry = closed[k]
        for u in range(entry.lower, entry.upper + 1):
            b = adaptive_from_anchor(k, u)
            for n in range(k, 31):
                assert b(n) == propagate_recursive(k, u, n)


anchors = st.integers(2, 8).flatmap(
    lambda k: st.tuples(st.just(k), st.integers(3, floor_factorial_e(k) + 1))
)


@given(anchors, st.integers(0, 10))
def test_strengthening_anchor_lowers_bound_by_n_over_k_factorial(anchor, extra):
    k, u = anchor
    if u == 3:
        return
    n = k + extra
    weaker = closed_form_bound(adaptive_from_anchor(k, u), n)
    stronger = closed_form_bound(adaptive_from_anchor(k, u - 1), n)
    assert weaker - stronger == factorial(n) // factorial(k)


@given(anchors)
def test_self_reproduction_and_optimality(anchor):
    k, u = anchor
    assert closed_form_bound(adaptive_from_anchor(k, u), k) == u
    assert check_optimality_remark(k, u)


def test_non_extension_to_n3():
    q = Fraction(1, 6)
    # q = 1/6 is 1/3! so the closed form is defined at n = 3
    f3 = closed_form_bound(AdaptiveBound.from_a(3, 1), 3)
    assert AdaptiveBound.from_a(3, 1).q == q
    assert f3 == 16 < 17


def test_default_kb_contents(kb):
    assert [(e.n, e.lower, e.upper) for e in kb] == [
        (1, 3, 3), (2, 6, 6), (3, 17, 17), (4, 51, 62), (5, 162, 307)
    ]


def test_normalize_defaults(kb):
    closed = normalize_kb(kb, 5)
    assert closed.upper(5) == 307


def test_normalize_with_assumption(kb):
    assumed, applied = apply_assumption(kb, 4, 51)
    assert applied
    assert normalize_kb(assumed, 5).upper(5) == 252
    # defaults untouched
    assert kb.upper(4) == 62


def test_normalize_from_single_entry():
    only = KnowledgeBase.from_entries([KnowledgeBaseEntry(2, 6, 6, "R_2")])
    closed = normalize_kb(only, 3)
    assert closed.upper(3) == 17
    assert closed[3].derived


def test_normalize_empty_kb_rejected():
    with pytest.raises(DomainError):
        normalize_kb(KnowledgeBase({}), 4)


def test_weak_assumption_is_ignored(kb):
    same, applied = apply_assumption(kb, 4, 63)
    assert not applied and same is kb


def test_assumption_below_lower_rejected(kb):
    with pytest.raises(DomainError, match="contradicts"):
        apply_assumption(kb, 4, 50)


def test_table_defaults(kb):
    rows = {r.n: r for r in best_bounds_table(kb, 6)}
    assert rows[2].best_upper == 6
    assert rows[6].best_upper == 1838
    assert rows[6].winning_anchor.k == 4
    assert rows[6].winning_anchor.q == Fraction(1, 6)


def test_table_with_assumption(kb):
    assumed, _ = apply_assumption(kb, 4, 51)
    rows = {r.n: r for r in best_bounds_table(assumed, 6)}
    assert rows[5].best_upper == 252
    assert rows[5].winning_anchor.q == Fraction(5, 8)
    rules = {c.rule for c in rows[5].all_candidates if c.value == 252}
    assert rules == {"closed-form", "recursion"}


def test_table_rows_are_minimum_and_below_unconditional(kb):
    for row in best_bounds_table(kb, 12):
        assert row.best_upper == min(c.value for c in row.all_candidates)
        assert row.best_upper <= floor_factorial_e(row.n) + 1


def test_table_tie_break_prefers_closed_form(kb):
    row = best_bounds_table(kb, 6)[5]
    assert row.n == 6
    assert row.winner.rule == "closed-form"


@pytest.mark.parametrize("n, assume, expected", [(2, None, 4), (4, None, 60), (4, 51, 49)])
def test_schur_upper(kb, n, assume, expected):
    if assume:
        kb, _ = apply_assumption(kb, 4, assume)
    assert schur_upper(n, normalize_kb(kb, n)) == expected


def test_schur_upper_rejects_n1(kb):
    with pytest.raises(DomainError):
        schur_upper(1, kb)


def test_parse_kb_reports_line_numbers():
    with pytest.raises(FormatError, match="line 3"):
        parse_kb("# header\n1 3 3 ok\n2 six 6 bad\n")
    with pytest.raises(FormatError, match="duplicate"):
        parse_kb("2 6 6 a\n2 6 6 b\n")
    with pytest.raises(FormatError, match="line 1"):
        parse_kb("4 60 50 inverted\n")


def test_parse_kb_provenance_and_comments():
    kb = parse_kb("4 51 62 known interval  # trailing comment\n")
    assert kb[4].provenance == "known interval"
