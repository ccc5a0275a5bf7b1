from fractions import Fraction

from bs4 import BeautifulSoup

from django_halfspace.core.codec import Degenerate
from django_halfspace.core.fixtures import FamilyLanguage
from django_halfspace.core.harness import run
from django_halfspace.core.lattice import HalfSpace
from django_halfspace.core.learners import HalfspaceLearner
from django_halfspace.core.report_generator import (
    ReportGenerator,
    attrs_to_str,
    describe_semantics,
    exact,
    timeline,
)
from django_halfspace.core.semantics import PatchedHalfSpace
from django_halfspace.core.streams import CANONICAL, StreamSpec
from django_halfspace.core.validators import FAIL, PASS, Verdict


def test_attrs_to_str():
    assert attrs_to_str({"class": "a", "title": '"x" & y'}) == (
        'class="a" title="&quot;x&quot; &amp; y"'
    )


def test_exact():
    assert exact(None) == "undefined"
    assert exact(Fraction(2, 4)) == "1/2"
    assert exact(3) == "3"


def test_describe_semantics():
    assert describe_semantics(HalfSpace((0, 1), 0)) == "+0*x1 +1*x2 +0 >= 0"
    patched = PatchedHalfSpace(
        HalfSpace((0, 1), 0), frozenset({(0, -1)}), frozenset({(2, 2), (1, 1)})
    )
    assert describe_semantics(patched) == (
        "+0*x1 +1*x2 +0 >= 0 plus {(0, -1)} minus {(1, 1), (2, 2)}"
    )
    assert describe_semantics(FamilyLanguage("fin-or-n", 7)) == "fin-or-n[7]"
    assert describe_semantics(Degenerate(0)) == "every point"
    assert describe_semantics(Degenerate(-1)) == "no point"


def test_verdict_badge():
    badge = ReportGenerator.verdict_badge(Verdict("caut", FAIL, (0, 1)))
    assert badge == (
        '<span class="verdict verdict-fail" data-restriction="caut">'
        "FAIL(0,1)</span>"
    )
    badge = ReportGenerator.verdict_badge(Verdict("conv", PASS))
    assert badge == '<span class="verdict" data-restriction="conv">PASS</span>'


def test_timeline():
    trace = run(HalfspaceLearner(2), StreamSpec(HalfSpace((1, 0), 0), CANONICAL), 20, 5)
    entries = timeline(trace)
    assert len(entries) == 6
    assert [entry.start for entry in entries] == [0, 1, 2, 3, 4, 5]
    assert entries[-1].end == len(trace.steps)
    assert entries[-1].lock_distance_sq == 1
    assert entries[0].lock_distance_sq is None


def test_render():
    trace = run(HalfspaceLearner(2), StreamSpec(HalfSpace((1, 0), 0), CANONICAL), 20, 5)
    html = ReportGenerator.render(trace, [Verdict("conv", PASS)])
    soup = BeautifulSoup(html, "html.parser")

    assert soup.h2.text == "general on +1*x1 +0*x2 +0 >= 0"
    verdict = soup.find("p", class_="run-verdict")
    assert verdict["data-status"] == "CONVERGED"
    assert verdict.text.startswith("CONVERGED t=5 locks=1")
    assert [span.text for span in soup.select("ul.verdicts span.verdict")] == ["PASS"]

    rows = soup.select("table.timeline tbody tr")
    assert len(rows) == 6
    cells = [td.text for td in rows[-1].find_all("td")]
    assert cells == ["5", str(len(trace.steps)), "locked", "+1*x1 +0*x2 +0 >= 0", "1"]
    assert rows[0].find_all("td")[-1].text == "undefined"
