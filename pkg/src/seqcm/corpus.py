"""Built-in sessions: the worked examples and a small corpus of direct sums
of cyclic modules used by ``seqcm repro`` and the test suite."""

from __future__ import annotations

from dataclasses import dataclass, field

from .ideals import Ideal
from .modules import DirectSum
from .session import Session, UnknownName, parse_session


def module_from_session(s: Session, name: str) -> DirectSum:
    R = s.ring
    return DirectSum.cyclic(R, [Ideal(R, list(gens)) for gens in s.module_ideals(name)])


def sop_from_session(s: Session, name: str) -> list:
    if name not in s.sops:
        raise UnknownName(f"no parameter system named {name!r}")
    return list(s.sops[name])


@dataclass(frozen=True)
class Example:
    name: str
    text: str
    verdict: str
    qs: tuple = ()  # names of m-primary monomial ideals declared in text
    sop: str | None = None  # a distinguished sop declared in text
    tags: frozenset = field(default_factory=frozenset)

    def session(self) -> Session:
        return parse_session(self.text)

    def module(self) -> DirectSum:
        return module_from_session(self.session(), "M")

    def parameters(self) -> list:
        return sop_from_session(self.session(), self.sop)

    def ideals(self) -> list[Ideal]:
        return [self.ideal(q) for q in self.qs]

    def ideal(self, name: str) -> Ideal:
        """A declared ideal or the ideal generated by a declared sop."""
        s = self.session()
        gens = s.ideals[name] if name in s.ideals else sop_from_session(s, name)
        return Ideal(s.ring, list(gens))


EX1 = Example(
    "ex1",
    """\
ring R = QQ[X,Y,Z];
ideal I = (Z^2);
module M = sum(R, R/I);
sop q1 = (X, Y, Z);
sop q2 = (X^2, Y^2, Z);
sop q3 = (X^3, Y^3, Z);
sop q4 = (X^4, Y^4, Z);
sop q5 = (X^5, Y^5, Z);
sop good = (X, Y, Z^2);
ideal m = (X, Y, Z);
ideal m2 = (X^2, X*Y, X*Z, Y^2, Y*Z, Z^2);
ideal q = (X^2, Y^2, Z);
""",
    "sCM",
    qs=("m", "m2", "q"),
    sop="good",
    tags=frozenset({"monomial"}),
)

SQUARE = Example(
    "square",
    """\
ring R = QQ[x,y,z,w];
module M = sum(R/(x*z, x*w, y*z, y*w));
sop q = (x - z, y - w);
ideal m = (x, y, z, w);
ideal m2 = (x^2, y^2, z^2, w^2, x*y, z*w);
ideal q3 = (x^2, y, z^3, w);
""",
    "gCM",
    qs=("m", "m2", "q3"),
    sop="q",
    tags=frozenset({"monomial"}),
)

EMBEDDED = Example(
    "embedded",
    """\
ring R = QQ[x,y];
module M = sum(R/(x^2, x*y));
sop q = (y);
ideal m = (x, y);
ideal m2 = (x^2, x*y, y^2);
ideal q3 = (x^3, y^2);
""",
    "sCM",
    qs=("m", "m2", "q3"),
    sop="q",
    tags=frozenset({"monomial"}),
)

PLANE_LINE = Example(
    "plane_line",
    """\
ring R = QQ[x,y,z];
module M = sum(R/(x*z, y*z));
ideal m = (x, y, z);
ideal a = (x^2, y, z^2);
ideal b = (x, y^3, z^2, x*y);
""",
    "sCM",
    qs=("m", "a", "b"),
    tags=frozenset({"monomial"}),
)

THREE_STRATA = Example(
    "three_strata",
    """\
ring R = QQ[x,y,z];
module M = sum(R/(z), R/(x, y), R/(x, y, z));
ideal m = (x, y, z);
ideal a = (x^2, y^2, z);
ideal b = (x, y^2, z^3);
""",
    "sCM",
    qs=("m", "a", "b"),
    tags=frozenset({"monomial"}),
)

PLANE_POINT = Example(
    "plane_point",
    """\
ring R = QQ[x,y,z];
module M = sum(R/(x^2, x*y, x*z));
ideal m = (x, y, z);
ideal a = (x, y^2, z^2);
ideal b = (x^2, y, z^3);
""",
    "sCM",
    qs=("m", "a", "b"),
    tags=frozenset({"monomial"}),
)

THICK_LINE = Example(
    "thick_line",
    """\
ring R = QQ[x,y,z];
module M = sum(R/(x^2, x*y));
ideal m = (x, y, z);
ideal a = (x, y^2, z);
ideal b = (x^3, y^2, z^2);
""",
    "sCM",
    qs=("m", "a", "b"),
    tags=frozenset({"monomial"}),
)

FREE_TORSION = Example(
    "free_torsion",
    """\
ring R = QQ[x,y];
module M = sum(R, R/(x^2, x*y, y^2));
ideal m = (x, y);
ideal a = (x^2, y);
ideal b = (x^3, x*y, y^2);
""",
    "sCM",
    qs=("m", "a", "b"),
    tags=frozenset({"monomial"}),
)

HYPERPLANE_PLANE = Example(
    "hyperplane_plane",
    """\
ring R = QQ[x,y,z,w];
module M = sum(R/(x*y, x*z));
ideal m = (x, y, z, w);
ideal a = (x^2, y, z, w^2);
ideal b = (x, y^2, z^2, w);
""",
    "sCM",
    qs=("m", "a", "b"),
    tags=frozenset({"monomial"}),
)

COORDINATE_CROSS = Example(
    "coordinate_cross",
    """\
ring R = QQ[x,y,z];
module M = sum(R/(x*y*z));
ideal m = (x, y, z);
ideal a = (x^2, y^2, z^2);
ideal b = (x, y^2, z^3);
""",
    "CM",
    qs=("m", "a", "b"),
    tags=frozenset({"monomial"}),
)

SQUARE_POINT = Example(
    "square_point",
    """\
ring R = QQ[x,y,z,w];
module M = sum(R/(x*z, x*w, y*z, y*w), R/(x, y, z));
sop q = (x - w, y - z);
ideal m = (x, y, z, w);
ideal a = (x^2, y, z, w^2);
ideal b = (x, y^2, z^2, w);
""",
    "sgCM",
    qs=("m", "a", "b"),
    sop="q",
    tags=frozenset({"monomial"}),
)

SQUARE_LINE_TORSION = Example(
    "square_line_torsion",
    """\
ring R = QQ[x,y,z,w];
module M = sum(R/(x*z, x*w, y*z, y*w), R/(x, y, z^2), R/(x, y, z, w));
sop q = (x - w, y^2 - z^2);
ideal m = (x, y, z, w);
ideal a = (x, y, z^2, w);
ideal b = (x^2, y^2, z, w);
""",
    "sgCM",
    qs=("m", "a", "b"),
    sop="q",
    tags=frozenset({"monomial"}),
)

TWO_SOLIDS = Example(
    "two_solids",
    """\
ring R = QQ[x,y,z,w,v];
module M = sum(R/(x*z, x*w, y*z, y*w));
""",
    "none",
    tags=frozenset({"monomial", "large"}),
)

CORPUS: tuple[Example, ...] = (
    EX1,
    SQUARE,
    EMBEDDED,
    PLANE_LINE,
    THREE_STRATA,
    PLANE_POINT,
    THICK_LINE,
    FREE_TORSION,
    HYPERPLANE_PLANE,
    COORDINATE_CROSS,
    SQUARE_POINT,
    SQUARE_LINE_TORSION,
    TWO_SOLIDS,
)

BY_NAME = {e.name: e for e in CORPUS}


def small_monomial() -> list[Example]:
    """Monomial corpus entries with at most 4 variables and 3 summands."""
    out = []
    for e in CORPUS:
        s = e.session()
        if "monomial" in e.tags and s.ring.nvars <= 4 and len(s.modules["M"]) <= 3:
            out.append(e)
    return out


def with_verdict(*verdicts: str) -> list[Example]:
    return [e for e in CORPUS if e.verdict in verdicts]
