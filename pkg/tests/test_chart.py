"""Account paths and the chart tree."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tledger import AccountPath, Chart, DuplicateAccountError, UnknownAccountError

segments = st.from_regex(r"[A-Za-z][A-Za-z0-9_-]{0,8}", fullmatch=True)
paths = st.builds(AccountPath, st.tuples(segments, segments).map(lambda t: t[:1] + t[1:]))


def p(text: str) -> AccountPath:
    return AccountPath.parse(text)


class TestAccountPath:
    def test_parse_and_render(self):
        path = p("assets:cash")
        assert path.segments == ("assets", "cash")
        assert str(path) == "assets:cash"
        assert path.parent == p("assets")
        assert path.leaf == "cash"
        assert p("assets").parent is None

    @pytest.mark.parametrize("bad", ["", ":", "a:", ":a", "1up", "a b", "a:b:", "é"])
    def test_invalid_paths(self, bad):
        with pytest.raises(ValueError):
            AccountPath.parse(bad)

    def test_case_sensitive(self):
        assert p("Assets") != p("assets")

    def test_ancestry(self):
        assert p("assets").is_ancestor_of(p("assets:cash:petty"))
        assert not p("assets").is_ancestor_of(p("assets"))
        assert not p("assets:cash").is_ancestor_of(p("assetsx:cash"))

    @given(st.lists(segments, min_size=1, max_size=4))
    def test_round_trip(self, segs):
        path = AccountPath(tuple(segs))
        assert AccountPath.parse(str(path)) == path


class TestChart:
    def test_declare_creates_implicit_ancestors(self):
        chart = Chart.empty().declare(p("assets:cash"))
        assert p("assets") in chart
        assert not chart.is_declared(p("assets"))
        assert chart.is_declared(p("assets:cash"))

    def test_declare_three_leaves_two_roots(self):
        chart = Chart.empty().declare_all(
            [p("liabilities:suppliers"), p("liabilities:banks"), p("equity:capital")]
        )
        assert chart.roots() == (p("equity"), p("liabilities"))
        assert chart.leaves() == (
            p("equity:capital"),
            p("liabilities:banks"),
            p("liabilities:suppliers"),
        )

    def test_duplicate_declaration_rejected(self):
        chart = Chart.empty().declare(p("assets:cash"))
        with pytest.raises(DuplicateAccountError):
            chart.declare(p("assets:cash"))

    def test_implicit_can_be_declared_later(self):
        chart = Chart.empty().declare(p("assets:cash")).declare(p("assets"))
        assert chart.is_declared(p("assets"))

    def test_declared_leaf_becomes_interior(self):
        chart = Chart.empty().declare(p("assets:cash"))
        assert chart.is_leaf(p("assets:cash"))
        chart = chart.declare(p("assets:cash:petty"))
        assert not chart.is_leaf(p("assets:cash"))
        assert chart.is_leaf(p("assets:cash:petty"))

    def test_leaves_under(self):
        chart = Chart.empty().declare_all(
            [p("a:x"), p("a:y:z"), p("b:w")]
        )
        assert chart.leaves_under(p("a")) == (p("a:x"), p("a:y:z"))
        assert chart.leaves_under(p("a:x")) == (p("a:x"),)
        with pytest.raises(UnknownAccountError):
            chart.leaves_under(p("missing"))

    def test_children_sorted(self):
        chart = Chart.empty().declare_all([p("a:z"), p("a:m"), p("a:b")])
        assert chart.children(p("a")) == (p("a:b"), p("a:m"), p("a:z"))

    def test_immutability(self):
        chart = Chart.empty()
        chart.declare(p("assets"))
        assert len(chart) == 0
