import pytest

from grpdlim.core import validate_groupoid
from grpdlim.examples import BASICS, COLIM, DEMO, LOOP
from grpdlim.textfmt import (
    ParseError,
    UnresolvedReference,
    ValidationFailure,
    parse,
    print_workspace,
)


TEXTS = {"basics": BASICS, "demo": DEMO, "loop": LOOP, "colim": COLIM}


@pytest.mark.parametrize("name", sorted(TEXTS))
def test_parse_all_templates(name):
    ws = parse(TEXTS[name])
    assert ws.decls


@pytest.mark.parametrize("name", sorted(TEXTS))
def test_print_parse_round_trip_is_a_fixpoint(name):
    ws = parse(TEXTS[name])
    once = print_workspace(ws)
    twice = print_workspace(parse(once))
    assert once == twice


def test_builtin_groups_and_constructors():
    ws = parse(BASICS)
    c2 = ws.get("C2", "group").value
    assert c2.order == 2
    v4 = ws.get("V4", "group").value
    assert sorted(v4.element_order(x) for x in range(4)) == [1, 2, 2, 2]
    bc2 = ws.get("BC2", "groupoid").value
    assert bc2.n_objects == 1 and bc2.n_morphisms == 2
    ec2 = ws.get("EC2", "groupoid").value
    assert validate_groupoid(ec2) == []
    i2 = ws.get("I2", "category").value
    assert i2.n_objects == 4


def test_named_triples_build_the_right_composition():
    ws = parse(BASICS)
    w = ws.get("W", "groupoid").value
    assert validate_groupoid(w) == []
    assert w.n_objects == 2 and w.n_morphisms == 4


def test_syntax_error_reports_line():
    with pytest.raises(ParseError) as exc:
        parse("group C2 {\n  builtin cyclic 2\n")  # unterminated block
    assert exc.value.line >= 1
    with pytest.raises(ParseError):
        parse("widget W { }")
    with pytest.raises(ParseError) as exc:
        parse("group C2 { builtin cyclic two }")
    assert "integers" in str(exc.value)


def test_unresolved_reference_reported():
    with pytest.raises(UnresolvedReference):
        parse("groupoid B { delooping NOPE }")
    with pytest.raises(UnresolvedReference):
        parse(
            "category I {\n  objects 2\n  arrow u 0 1\n}\n"
            "diagram D {\n  index I\n  vertex 0 MISSING\n}\n"
        )


def test_kind_mismatch_is_unresolved():
    with pytest.raises(UnresolvedReference):
        parse(
            "group C2 { builtin cyclic 2 }\n"
            "groupoid B { delooping C2 }\n"
            "groupoid E { translation B }\n"  # B is a groupoid, not a group
        )


def test_validation_failure_on_bad_tables():
    # non-associative "group" table
    with pytest.raises(ValidationFailure):
        parse("group BAD {\n  row 0 1\n  row 1 1\n}\n")
    # triples violating associativity: (f;f);f != f;(f;f)
    bad_cat = (
        "category C {\n"
        "  objects 1\n"
        "  arrow e 0 0\n"
        "  arrow f 0 0\n"
        "  e;e = e\n"
        "  e;f = e\n"
        "  f;e = f\n"
        "  f;f = e\n"
        "}\n"
    )
    with pytest.raises(ValidationFailure):
        parse(bad_cat)


def test_functor_validation():
    with pytest.raises(ValidationFailure):
        parse(
            "group C2 { builtin cyclic 2 }\n"
            "groupoid B { delooping C2 }\n"
            "functor F {\n  from B\n  to B\n  obj 0\n  mor 1 0\n}\n"
        )


def test_duplicate_names_rejected():
    with pytest.raises(ParseError):
        parse("group A { builtin cyclic 2 }\ngroup A { builtin cyclic 3 }\n")


def test_op_functor_target():
    ws = parse(BASICS)
    nb = ws.get("nb", "functor")
    assert nb.meta["op_target"]
    site = ws.get("S", "site").value
    assert [p.name for p in site.points] == ["p"]
