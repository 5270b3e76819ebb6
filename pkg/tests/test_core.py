"""Profile model and parser tests."""

import pytest

from singlepeaked.core import (
    Axis,
    OrderClass,
    Profile,
    WeakOrder,
    classify_order,
    dump_native,
    parse_native,
    parse_preflib,
    strictly_above_count,
)
from singlepeaked.exceptions import (
    DuplicateCandidateError,
    IncompleteVoteError,
    ProfileError,
    ProfileFormatError,
    RepeatedCandidateError,
    UnknownCandidateError,
)
from tests.conftest import PREFLIB_FILE


def test_parse_native_ties() -> None:
    """Indifferent candidates end up in one tier."""
    profile = parse_native("candidates: a,b,c\n1: a ~ c > b")
    assert [candidate.name for candidate in profile.candidates] == ["a", "b", "c"]
    assert len(profile.votes) == 1
    assert profile.votes[0].order.tiers == (frozenset({0, 2}), frozenset({1}))


def test_parse_native_multiplicity() -> None:
    """Multiplicities are kept as given."""
    profile = parse_native("candidates: a,b\n2: a > b")
    assert profile.votes[0].multiplicity == 2
    assert profile.votes[0].order.tiers == (frozenset({0}), frozenset({1}))
    assert profile.total_weight == 2


def test_parse_native_comments_and_whitespace() -> None:
    """Comment lines, blank lines and spacing around tokens are ignored."""
    profile = parse_native("# header comment\n\ncandidates:  a , b\n# vote follows\n 3 :b>a \n")
    assert profile.votes[0].multiplicity == 3
    assert profile.format_order(profile.votes[0].order) == "b > a"


@pytest.mark.parametrize(
    "text, error, line",
    (
        ("candidates: a,b\n1: a > a", RepeatedCandidateError, 2),
        ("candidates: a,b,a\n1: a > b", DuplicateCandidateError, 1),
        ("candidates: a,b\n1: a > c", UnknownCandidateError, 2),
        ("candidates: a,b,c\n1: a > b", IncompleteVoteError, 2),
        ("candidates: a,b\n\n0: a > b", ProfileError, 3),
        ("candidates: a,b\n1 a > b", ProfileFormatError, 2),
        ("candidates: a,b\n1: a > > b", ProfileFormatError, 2),
        ("voters: a,b\n1: a > b", ProfileFormatError, 1),
    ),
)
def test_parse_native_errors(text: str, error: type[ProfileError], line: int) -> None:
    """Every parse error names the offending line."""
    with pytest.raises(error) as excinfo:
        parse_native(text)
    assert excinfo.value.line == line
    assert str(excinfo.value).startswith(f"line {line}: ")


def test_parse_native_without_header() -> None:
    """Text holding nothing but comments is rejected."""
    with pytest.raises(ProfileFormatError):
        parse_native("# nothing here\n")


def test_native_dump_reparses_identically(example_two: Profile) -> None:
    """Dumping and re-parsing yields a structurally identical profile."""
    assert parse_native(dump_native(example_two)) == example_two


def test_parse_preflib_braces() -> None:
    """Braced groups become indifference tiers."""
    profile = parse_preflib("# NUMBER ALTERNATIVES: 3\n1: 1,{2,3}")
    assert [candidate.name for candidate in profile.candidates] == ["1", "2", "3"]
    assert profile.votes[0].order.tiers == (frozenset({0}), frozenset({1, 2}))


def test_parse_preflib_completes_missing_last() -> None:
    """Unranked candidates form one final tier when completion is requested."""
    profile = parse_preflib("# NUMBER ALTERNATIVES: 3\n1: 2", complete_missing_last=True)
    assert profile.votes[0].order.tiers == (frozenset({1}), frozenset({0, 2}))


def test_parse_preflib_rejects_incomplete_vote() -> None:
    """Without completion an incomplete vote is an error."""
    with pytest.raises(IncompleteVoteError) as excinfo:
        parse_preflib("# NUMBER ALTERNATIVES: 3\n1: 2")
    assert excinfo.value.line == 2


@pytest.mark.parametrize(
    "body, error",
    (
        ("1: 1,{2,3", ProfileFormatError),
        ("1: 1,2},3", ProfileFormatError),
        ("1: {1,{2}},3", ProfileFormatError),
        ("1: 1,2,4", UnknownCandidateError),
        ("1: 1,x,3", ProfileFormatError),
    ),
)
def test_parse_preflib_errors(body: str, error: type[ProfileError]) -> None:
    """Malformed braces and unknown ids are rejected."""
    with pytest.raises(error):
        parse_preflib("# NUMBER ALTERNATIVES: 3\n" + body)


def test_parse_preflib_names() -> None:
    """Alternative names are read from the header, with forbidden characters replaced."""
    profile = parse_preflib(PREFLIB_FILE.read_text(encoding="utf-8"), complete_missing_last=True)
    assert [candidate.name for candidate in profile.candidates] == ["Alice_Smith", "Bob", "Carol"]
    assert [vote.multiplicity for vote in profile.votes] == [2, 1]
    assert profile.votes[1].order.tiers == (frozenset({2}), frozenset({0}), frozenset({1}))


def test_parse_preflib_names_incomplete_vote() -> None:
    """The partial vote of the sample file needs completion."""
    with pytest.raises(IncompleteVoteError) as excinfo:
        parse_preflib(PREFLIB_FILE.read_text(encoding="utf-8"))
    assert excinfo.value.line == 8


def test_parse_preflib_skips_zero_counts() -> None:
    """Vote lines with a zero count are dropped."""
    profile = parse_preflib("# NUMBER ALTERNATIVES: 2\n0: 1,2\n4: 2,1")
    assert [vote.multiplicity for vote in profile.votes] == [4]


@pytest.mark.parametrize(
    "tiers, candidate, count",
    (
        ([[0, 2], [1], [4, 3]], 1, 2),
        ([[0], [1], [2], [4, 3]], 3, 3),
        ([[0, 2], [1], [4, 3]], 2, 0),
    ),
)
def test_strictly_above_count(tiers: list[list[int]], candidate: int, count: int) -> None:
    """Counts the candidates in strictly better tiers."""
    assert strictly_above_count(WeakOrder.from_tiers(tiers), candidate) == count


def test_strictly_above_count_is_tier_prefix_sum() -> None:
    """Candidates share a count iff they share a tier."""
    order = WeakOrder.from_tiers([[3], [0, 4, 1], [2], [5, 6]])
    counts = [strictly_above_count(order, candidate) for candidate in range(7)]
    assert counts == [1, 1, 4, 0, 1, 5, 5]


@pytest.mark.parametrize(
    "tiers, order_class",
    (
        ([[0], [1], [3], [2]], OrderClass.TOTAL),
        ([[0], [2], [1, 3]], OrderClass.TOP),
        ([[0, 2], [3], [1]], OrderClass.WEAK),
        ([[0, 1, 2]], OrderClass.TOP),
    ),
)
def test_classify_order(tiers: list[list[int]], order_class: OrderClass) -> None:
    """The strongest matching class is returned."""
    assert classify_order(WeakOrder.from_tiers(tiers)) is order_class


@pytest.mark.parametrize(
    "tiers",
    (
        [[0], []],
        [[0, 1], [1]],
        [[0], [2]],
    ),
)
def test_weak_order_validation(tiers: list[list[int]]) -> None:
    """Empty tiers, overlapping tiers and id gaps are rejected."""
    with pytest.raises(ProfileError):
        WeakOrder.from_tiers(tiers)


def test_weak_order_restrict() -> None:
    """Restriction keeps tier order and drops emptied tiers."""
    order = WeakOrder.from_tiers([[0, 2], [1], [3, 4]])
    assert order.restrict({1, 3}) == [frozenset({1}), frozenset({3})]
    assert order.restrict({0, 3, 4}) == [frozenset({0}), frozenset({3, 4})]


def test_axis_must_be_permutation() -> None:
    """An axis lists every candidate id exactly once."""
    assert Axis((2, 0, 1)).position_of == (1, 2, 0)
    assert Axis((2, 0, 1)).reversed() == Axis((1, 0, 2))
    with pytest.raises(ProfileError):
        Axis((0, 0, 1))


def test_profile_axis_text(example_two: Profile) -> None:
    """Axes are written and read in ``a < b < c`` notation."""
    axis = example_two.parse_axis("b<a < c<d<e")
    assert axis == Axis((1, 0, 2, 3, 4))
    assert example_two.format_axis(axis) == "b < a < c < d < e"
    with pytest.raises(UnknownCandidateError):
        example_two.parse_axis("b < a < c < d < z")
    with pytest.raises(ProfileError):
        example_two.parse_axis("b < a < c")


def test_profile_rejects_incomplete_order() -> None:
    """Every vote must rank exactly the profile's candidates."""
    with pytest.raises(IncompleteVoteError):
        Profile.from_orders(["a", "b", "c"], [WeakOrder.from_ranking([0, 1])])
    with pytest.raises(ProfileFormatError):
        Profile.from_orders(["a b"], [WeakOrder.from_ranking([0])])
