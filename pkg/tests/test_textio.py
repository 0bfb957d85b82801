import random

import pytest

from adtlab import core
from adtlab.core import Counter, Eps, Leaf, PropSet, SandN, Trace, Valuation, Var
from adtlab.fo import adt_to_fo
from adtlab.sere import adt_to_sere
from adtlab.textio import (
    ParseError,
    infer_adt_props,
    infer_letter_props,
    parse_adt,
    parse_fo,
    parse_formula,
    parse_sere,
    parse_trace_file,
    parse_valuation,
    render,
    render_trace_file,
)
from corpus import P1, P2, random_formula, random_tree


def test_formula_precedence_and_round_trip():
    f = parse_formula("!p & q | p", P2)
    # ! binds tighter than &, & tighter than |
    assert f == core.Or(core.And(core.Not(Var("p")), Var("q")), Var("p"))
    assert parse_formula(render(f), P2) == f


def test_formula_constants_and_unknown_prop():
    assert parse_formula("true", P1) == core.Top()
    assert parse_formula("false", P1) == core.Bottom()
    with pytest.raises(ParseError):
        parse_formula("q", P1)


def test_adt_sugar_expands_to_primitives():
    assert parse_adt("STRICT(p)", P1) == core.strict(Var("p"), P1)
    assert parse_adt("GE(2)", P1) == core.ge(P1, 2)
    assert parse_adt("LE(1)", P1) == core.le(P1, 1)
    assert parse_adt("EQ(3)", P1) == core.eq(P1, 3)
    assert parse_adt("ETRUE", P1) == core.etrue(P1)
    assert parse_adt("NOT([p])", P1) == core.co(Leaf(Var("p"), P1))
    assert parse_adt("ALLR([p])", P1) == core.all_right(Leaf(Var("p"), P1))
    assert parse_adt("CAP(EPS, EPS)", P1) == core.cap(Eps(P1), Eps(P1))
    assert parse_adt("TOP", P1) == Leaf(core.Top(), P1)


def test_adt_nary_and_nesting():
    t = parse_adt("SAND([E], C([S1&S2], ALLR([G])))", PropSet(("E", "S1", "S2", "G")))
    assert isinstance(t, SandN) and isinstance(t.children[1], Counter)
    with pytest.raises(ParseError):
        parse_adt("OR()", P1)
    with pytest.raises(ParseError):
        parse_adt("C([p])", P1)


def test_adt_round_trip_random():
    rng = random.Random(5)
    for i in range(80):
        props = P2 if i % 2 else P1
        t = random_tree(rng, props, 6, 2)
        assert parse_adt(render(t), props) == t


def test_parse_error_has_line_and_column():
    with pytest.raises(ParseError) as err:
        parse_adt("OR(EPS,\n  [p & ])", P1)
    assert "2:" in str(err.value)


def test_trailing_garbage_rejected():
    with pytest.raises(ParseError):
        parse_adt("EPS EPS", P1)


def test_valuation_round_trip():
    for mask in range(4):
        v = Valuation(P2, mask)
        assert parse_valuation(render(v), P2) == v
    with pytest.raises(ParseError):
        parse_valuation("{r}", P2)


def test_trace_file_single_trace():
    props, traces = parse_trace_file("props: p\n{}\n{p}\n")
    assert props == P1
    assert traces == [Trace(P1, (Valuation(P1, 0), Valuation(P1, 1)))]


def test_trace_file_one_empty_trace():
    props, traces = parse_trace_file("props: p\n\n")
    assert traces == [Trace(P1)]


def test_trace_file_blank_line_separates():
    text = "props: p,q\n{p}\n\n\n{q}\n{p,q}\n"
    props, traces = parse_trace_file(text)
    assert props == P2
    assert [len(w) for w in traces] == [1, 0, 2]


def test_trace_file_comments_and_leading_blanks():
    text = "# a comment\n\nprops: p\n# another\n{p}\n"
    props, traces = parse_trace_file(text)
    assert traces == [Trace(P1, (Valuation(P1, 1),))]


def test_trace_file_missing_header():
    with pytest.raises(ParseError):
        parse_trace_file("{p}\n")


def test_trace_file_round_trip():
    rng = random.Random(9)
    letters = [Valuation(P2, m) for m in range(4)]
    for _ in range(30):
        traces = [
            Trace(P2, tuple(rng.choice(letters) for _ in range(rng.randint(0, 3))))
            for _ in range(rng.randint(0, 4))
        ]
        text = render_trace_file(P2, traces)
        assert parse_trace_file(text) == (P2, traces)


def test_fo_round_trip_random_trees():
    rng = random.Random(11)
    for _ in range(40):
        phi = adt_to_fo(random_tree(rng, P2, 5, 1))
        assert parse_fo(render(phi), P2) == phi


def test_fo_quantifier_syntax():
    phi = parse_fo("E x. A y. ~(x < y) & letter({p}, x)", P1)
    rendered = render(phi)
    assert parse_fo(rendered, P1) == phi
    # E and A still usable as plain variables when no dot follows
    psi = parse_fo("E E. letter({p}, E)", P1)
    assert render(psi).startswith("E E.")


def test_fo_parse_errors():
    with pytest.raises(ParseError):
        parse_fo("E x letter({p}, x)", P1)  # missing dot
    with pytest.raises(ParseError):
        parse_fo("letter({q}, x)", P1)  # q not declared


def test_sere_round_trip_random_trees():
    rng = random.Random(17)
    for _ in range(40):
        e = adt_to_sere(random_tree(rng, P2, 5, 1))
        assert parse_sere(render(e), P2) == e


def test_sere_syntax():
    e = parse_sere("!0 . {p} & eps | {q}", P2)
    assert parse_sere(render(e), P2) == e
    with pytest.raises(ParseError):
        parse_sere("{p} .", P2)


def test_infer_props():
    assert infer_adt_props("SAND([E], C([S1&S2], ALLB(C([G],[D]))))").names == (
        "D", "E", "G", "S1", "S2",
    )
    assert infer_adt_props("GE(2)").names == ()
    assert infer_letter_props("E x. letter({q,p}, x)").names == ("p", "q")
    assert infer_letter_props("{p} . !{q}").names == ("p", "q")


def test_render_formula_random_round_trip():
    rng = random.Random(23)
    for _ in range(120):
        f = random_formula(rng, P2, 4)
        assert parse_formula(render(f), P2) == f
