import pytest

from thh.charts import CHART_KINDS, ChartSpec, chart_data, render_svg

RANGES = {
    "torsion": (2, 18, 40),
    "k1-page": (2, 0, 24),
    "v0-page": (3, 0, 30),
    "v1-page": (2, 0, 24),
    "eta-page": (2, 0, 24),
    "ko-answer": (2, 0, 24),
}


@pytest.mark.parametrize("kind", CHART_KINDS)
def test_every_kind_renders_deterministically(kind):
    p, lo, hi = RANGES[kind]
    spec = ChartSpec(kind, p, lo, hi)
    first = render_svg(spec)
    assert first == render_svg(ChartSpec(kind, p, lo, hi))
    assert first.startswith("<svg") and first.rstrip().endswith("</svg>")


@pytest.mark.parametrize("kind", CHART_KINDS)
def test_dots_and_lines_stay_in_range(kind):
    p, lo, hi = RANGES[kind]
    dots, lines = chart_data(ChartSpec(kind, p, lo, hi))
    assert all(lo <= d <= hi for d, _y, _k in dots)
    for x1, _y1, x2, _y2, style in lines:
        assert lo <= x1 <= hi and lo <= x2 <= hi
        assert style in ("p", "v", "v2", "eta")


def test_paper_style_shifts_lines_only():
    plain = render_svg(ChartSpec("v1-page", 2, 0, 24))
    shifted = render_svg(ChartSpec("v1-page", 2, 0, 24, paper_style=True))
    assert plain != shifted
    # the dot population is identical either way
    assert plain.count("<circle") == shifted.count("<circle")


def test_range_and_prime_validation():
    with pytest.raises(ValueError):
        ChartSpec("torsion", 2, 10, 4)
    with pytest.raises(ValueError):
        ChartSpec("ko-answer", 3, 0, 10)
    with pytest.raises(ValueError):
        ChartSpec("nonsense", 2, 0, 10)
