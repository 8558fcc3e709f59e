from fractions import Fraction

import pytest

from hodgecaj.golden import BASE_LOG, HODGE_LOG, available_levels, base_log, hodge_log
from hodgecaj.scalars import weight_of
from hodgecaj.tpoly import mono_degree


def test_levels_available():
    assert available_levels(0) == list(range(1, 8))
    assert available_levels(1) == [1, 2, 3]
    assert available_levels(0, "base") == list(range(1, 7))


@pytest.mark.parametrize("alpha", [0, 1])
def test_reference_entries_have_the_dimension_weight(alpha):
    # a transcription slip almost always breaks homogeneity
    for level in available_levels(alpha):
        for mono, c in hodge_log(alpha, level):
            assert weight_of(c) == Fraction((2 * alpha + 1) * level - mono_degree(mono), 2), (level, mono)


@pytest.mark.parametrize("alpha", [0, 1])
def test_hodge_table_contains_base_table(alpha):
    # top-degree parts carry no (p, q) dependence
    for level in available_levels(alpha, "base"):
        top = (2 * alpha + 1) * level
        hodge = hodge_log(alpha, level)
        base = base_log(alpha, level)
        if level in HODGE_LOG[alpha]:
            top_part = hodge.homogeneous_part(top)
            assert top_part == base.homogeneous_part(top)


def test_no_duplicate_monomials():
    for table in (BASE_LOG, HODGE_LOG):
        for alpha, levels in table.items():
            for level, entries in levels.items():
                names = [m for m, _ in entries]
                assert len(names) == len(set(names)), (alpha, level)
