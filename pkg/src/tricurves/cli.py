"""Command-line surface: catalog of known negative curves, batch
verification, SVG map rendering and ad-hoc exact computations.

Every catalog entry is re-verifiable from scratch: stored values are
recomputed by the library and diffed, never trusted.  All user-facing
numbers are exact fractions; decimal input is rejected.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import families, mds, negcurve, trispace
from .families import (
    family_triangle,
    mn_pairs,
    new_nonspecial,
    special_triangle,
    special_upsilon,
    xi,
)
from .lattice import lattice_points
from .laurent import newton_polygon, to_text, vanishing_order
from .mds import Diamond, certify_mds, diamond_section, family_diamond
from .negcurve import (
    canonical_degree_and_genus,
    detect_negative_curve,
    wpp_degree_search,
)
from .trispace import (
    Degenerate,
    SlopePair,
    SlopeTriangle,
    WppWeights,
    edge_rebasings,
    minimal_triangle,
    slopes_of_wpp,
    to_fundamental_domain,
    wpp_of_slopes,
)

SCHEMA_VERSION = 1
_CATALOG_PATH = Path(__file__).parent / "data" / "catalog.json"


def parse_fraction(text: str) -> Fraction:
    """Exact fraction parser for CLI flags; decimals are rejected."""
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise argparse.ArgumentTypeError(
            f"{text!r} looks like a decimal; pass an exact fraction "
            "such as 5/3 or 7"
        )
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}") from exc


# ---------------------------------------------------------------------------
# Catalog.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    family: str  # IT | RT | Special | NewNonSpecial | Sporadic
    data: dict

    @property
    def deep(self) -> bool:
        return bool(self.data.get("deep", False))

    @property
    def m(self) -> int:
        return int(self.data["m"])

    def slopes(self) -> SlopePair:
        s, t = self.data["slopes"]
        return SlopePair(Fraction(s), Fraction(t))

    def triangle(self) -> Optional[SlopeTriangle]:
        spec = self.data.get("triangle")
        if spec is None:
            return None
        mult = Fraction(spec.get("multiplier", 1))
        verts = [(mult * Fraction(x), mult * Fraction(y))
                 for x, y in spec["vertices"]]
        return SlopeTriangle.from_vertices(*verts)

    def weights(self) -> Optional[WppWeights]:
        w = self.data.get("weights")
        return WppWeights(*w) if w else None


def load_catalog(path: Optional[Path] = None) -> list:
    raw = json.loads(Path(path or _CATALOG_PATH).read_text())
    if raw.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(
            f"unsupported catalog schema {raw.get('schema_version')!r}")
    entries = [CatalogEntry(e["id"], e["family"], e) for e in raw["entries"]]
    ids = [e.id for e in entries]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate catalog ids")
    return entries


@dataclass(frozen=True)
class Check:
    field: str
    ok: bool
    detail: str = ""


@dataclass
class Report:
    entry_id: str
    checks: list = field(default_factory=list)
    skipped: bool = False

    @property
    def passed(self) -> bool:
        return self.skipped or all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(ok), detail))

    def expect(self, name: str, got, want) -> None:
        self.add(name, got == want, f"got {got}, want {want}")

    def to_json(self) -> dict:
        return {
            "id": self.entry_id,
            "passed": self.passed,
            "skipped": self.skipped,
            "checks": [
                {"field": c.field, "ok": c.ok, "detail": c.detail}
                for c in self.checks
            ],
        }


def catalog_verify(entry: CatalogEntry, deep: bool = False) -> Report:
    """Re-run the pipeline for one entry and diff against stored values."""
    report = Report(entry.id)
    if entry.deep and not deep:
        report.skipped = True
        report.add("deep", True, "skipped: run with --deep")
        return report
    try:
        _verify_into(entry, report, deep)
    except Exception as exc:  # verification failure is a report
        report.add("pipeline", False, f"{type(exc).__name__}: {exc}")
    return report


def _verify_into(entry: CatalogEntry, report: Report, deep: bool) -> None:
    handler = {
        "IT": _verify_family,
        "RT": _verify_family,
        "Special": _verify_special,
        "NewNonSpecial": _verify_new_nonspecial,
        "Sporadic": _verify_sporadic,
    }.get(entry.family)
    if handler is None:
        report.add("family", False, f"unknown family {entry.family!r}")
        return
    handler(entry, report, deep)


def _check_kyc(report: Report, poly, m: int, want=None) -> None:
    kyc, _ = canonical_degree_and_genus(poly, order=m)
    if want is None:
        report.add("kyc", kyc < 0, f"kyc = {kyc}, want < 0")
    else:
        report.expect("kyc", kyc, want)


def _verify_family(entry: CatalogEntry, report: Report, deep: bool) -> None:
    d = entry.data
    K, M, N, n = d["K"], d["M"], d["N"], d["n"]
    kind = entry.family
    tri = family_triangle(K, M, N, kind)
    report.expect("slopes", entry.slopes(), tri.slopes)
    want_m = M + N if kind == "IT" else M
    report.expect("m", entry.m, want_m)
    poly = xi(K, n, "int" if kind == "IT" else "rat")
    report.expect("order", vanishing_order(poly), entry.m)
    mt = minimal_triangle(newton_polygon(poly), tri.slopes)
    c2 = 2 * mt.area() - Fraction(entry.m) ** 2
    report.expect("self_intersection", c2,
                  Fraction(d["self_intersection"]))
    if entry.m >= 2:
        # the canonical degree is negative except for a handful of
        # rational-triangle curves where it is exactly zero; those store
        # the exact value
        _check_kyc(report, poly, entry.m, want=d.get("kyc"))


def _verify_special(entry: CatalogEntry, report: Report, deep: bool) -> None:
    d = entry.data
    K = d["K"]
    ups, weights, m, deficiency = special_upsilon(K)
    report.expect("weights", list(weights.sorted()),
                  sorted(d["weights"]))
    report.expect("m", m, entry.m)
    report.expect("deficiency", deficiency, d["deficiency"])
    tri = special_triangle(K)
    report.expect("slopes", entry.slopes(), tri.slopes)
    mt = minimal_triangle(newton_polygon(ups), tri.slopes)
    c2 = 2 * mt.area() - Fraction(m) ** 2
    report.expect("self_intersection", c2,
                  Fraction(-(K - 1), K * (K - 2)))
    report.expect("self_intersection_stored", c2,
                  Fraction(d["self_intersection"]))
    _check_kyc(report, ups, m, want=(K - 1) * (K - 4))
    if "degree" in d:
        a, b, c = weights.a, weights.b, weights.c
        deg = d["degree"]
        report.expect("degree_identity", Fraction(deg * deg, a * b * c),
                      2 * mt.area())
        if deep:
            found = wpp_degree_search(weights, m, deg)
            report.expect("degree_search", found and found[0], deg)


def _verify_new_nonspecial(entry: CatalogEntry, report: Report,
                           deep: bool) -> None:
    d = entry.data
    K = d["K"]
    tri, m, candidate = new_nonspecial(K)
    report.expect("m", m, entry.m)
    report.expect("slopes", entry.slopes(), tri.slopes)
    report.expect("kernel_dimension", candidate.kernel_dimension, 1)
    report.expect("self_intersection", candidate.self_intersection,
                  Fraction(d["self_intersection"]))
    _check_kyc(report, candidate.poly, m)


def _verify_sporadic(entry: CatalogEntry, report: Report,
                     deep: bool) -> None:
    d = entry.data
    m = entry.m
    slopes = entry.slopes()
    tri = entry.triangle()
    weights = entry.weights()
    poly = None
    if tri is not None:
        report.expect("triangle_slopes", tri.slopes, slopes)
        candidate = detect_negative_curve(tri, m)
        report.add("kernel", candidate is not None,
                   "no curve in the stated triangle"
                   if candidate is None else
                   f"kernel dimension {candidate.kernel_dimension}")
        if candidate is not None:
            report.add("self_intersection_sign",
                       candidate.self_intersection <= 0,
                       f"C^2 = {candidate.self_intersection}")
            poly = candidate.poly
    if weights is not None:
        derived = wpp_of_slopes(slopes)
        if derived is not None:
            report.expect("weights_of_slopes", sorted(derived.sorted()),
                          sorted(d["weights"]))
        deg = d["degree"]
        found = wpp_degree_search(weights, m, deg)
        report.expect("degree_search", found and found[0], deg)
        a, b, c = weights.a, weights.b, weights.c
        c2 = Fraction(deg * deg, a * b * c) - m * m
        report.add("self_intersection_sign", c2 <= 0, f"C^2 = {c2}")
        if "self_intersection" in d:
            report.expect("self_intersection", c2,
                          Fraction(d["self_intersection"]))
        if found and poly is None:
            poly = found[1]
    if poly is not None and m >= 2 and not d.get("special"):
        _check_kyc(report, poly, m)
    if d.get("special") and weights is not None:
        _, chart = mds.wpp_curve(weights, m, d["degree"], slopes)
        mt = minimal_triangle(newton_polygon(chart), slopes)
        count = len(lattice_points(mt.polygon()))
        deficiency = m * (m + 1) // 2 + 1 - count
        report.expect("deficiency", deficiency, d["deficiency"])


# ---------------------------------------------------------------------------
# SVG map.
# ---------------------------------------------------------------------------


@dataclass
class MapSpec:
    """Viewport and content selection for the parameter-space map."""

    s_range: tuple = (Fraction(1), Fraction(3))
    t_range: tuple = (Fraction(5, 2), Fraction(6))
    k_range: tuple = (3, 6)
    n_max: int = 3
    samples: int = 24
    strip: Optional[Fraction] = None

    @staticmethod
    def from_dict(raw: dict) -> "MapSpec":
        spec = MapSpec()
        if "viewport" in raw:
            vp = raw["viewport"]
            spec.s_range = tuple(Fraction(x) for x in vp["s"])
            spec.t_range = tuple(Fraction(x) for x in vp["t"])
        if "k_range" in raw:
            spec.k_range = tuple(int(x) for x in raw["k_range"])
        spec.n_max = int(raw.get("n_max", spec.n_max))
        spec.samples = int(raw.get("samples", spec.samples))
        if raw.get("strip") is not None:
            spec.strip = Fraction(raw["strip"])
        return spec


_W, _H, _MARGIN = 640, 520, 40


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def render_map(spec: MapSpec, catalog: Optional[list] = None) -> str:
    """Deterministic SVG of the slope plane with diamond outlines.

    Diamond boundaries come from exact vertical sections; endpoints are
    rasterized only at output time.  Centers carry exact fractions in
    data attributes.
    """
    s0, s1 = spec.s_range
    t0, t1 = spec.t_range
    if not (s0 < s1 and t0 < t1) or s0 <= 0 or t0 <= 0:
        raise ValueError("empty or invalid viewport")

    def px(s) -> float:
        return _MARGIN + float((Fraction(s) - s0) / (s1 - s0)) * _W \
            if isinstance(s, (int, Fraction)) \
            else _MARGIN + (float(s) - float(s0)) / float(s1 - s0) * _W

    def py(t) -> float:
        return _MARGIN + _H - (float(t) - float(t0)) / float(t1 - t0) * _H

    out = []
    out.append(
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{_W + 2 * _MARGIN}" height="{_H + 2 * _MARGIN}" '
        f'viewBox="0 0 {_W + 2 * _MARGIN} {_H + 2 * _MARGIN}">')
    out.append(
        f'<rect x="{_MARGIN}" y="{_MARGIN}" width="{_W}" height="{_H}" '
        'fill="white" stroke="black" stroke-width="1"/>')
    # horizontal center lines t = K
    for K in range(spec.k_range[0], spec.k_range[1] + 1):
        if t0 <= K <= t1:
            y = _fmt(py(K))
            out.append(
                f'<line x1="{_MARGIN}" y1="{y}" x2="{_MARGIN + _W}" '
                f'y2="{y}" stroke="#cccccc" stroke-dasharray="4 3"/>')
            out.append(
                f'<text x="{_MARGIN + 4}" y="{_fmt(py(K) - 4)}" '
                f'font-size="11">t={K}</text>')
    # the 1-y region boundary t = s^2/(s-1)
    pts = []
    for k in range(spec.samples * 4 + 1):
        s = s0 + (s1 - s0) * Fraction(k, spec.samples * 4)
        if s <= 1:
            continue
        t = s * s / (s - 1)
        if t0 <= t <= t1:
            pts.append(f"{_fmt(px(s))},{_fmt(py(t))}")
    if pts:
        out.append(
            f'<polyline points="{" ".join(pts)}" fill="none" '
            'stroke="#888888" stroke-dasharray="6 3"/>')

    for K in range(spec.k_range[0], spec.k_range[1] + 1):
        pairs = mn_pairs(K, spec.n_max)
        for n in range(1, spec.n_max + 1):
            if len(pairs) <= n:
                break
            sol = pairs[n]
            for kind in ("IT", "RT"):
                tri = family_triangle(K, sol.M, sol.N, kind)
                center = tri.slopes
                if not (s0 <= center.s <= s1 and t0 <= center.t <= t1):
                    continue
                d = family_diamond(K, n, kind)
                label = f"{kind}_{K}({sol.M},{sol.N})"
                out.extend(_diamond_svg(d, label, center, spec, px, py))
    if spec.strip is not None:
        x = _fmt(px(spec.strip))
        out.append(
            f'<line x1="{x}" y1="{_MARGIN}" x2="{x}" '
            f'y2="{_MARGIN + _H}" stroke="#3366cc"/>')
        for label, dia, center in _strip_diamonds(spec.strip):
            if s0 <= center.s <= s1 and t0 <= center.t <= t1:
                out.extend(_diamond_svg(dia, label, center, spec, px, py))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _diamond_svg(d: Diamond, label: str, center: SlopePair, spec: MapSpec,
                 px, py) -> list:
    out = []
    horiz = diamond_section(d, "horizontal", center.t)
    if not horiz:
        return out
    lo, hi = horiz[0]
    flo = float(center.s) if lo is None else float(lo)
    fhi = float(center.s) if hi is None else float(hi)
    upper, lower = [], []
    for k in range(1, spec.samples):
        sf = flo + (fhi - flo) * k / spec.samples
        s = Fraction(round(sf * 720720), 720720)
        sect = diamond_section(d, "vertical", s)
        if not sect:
            continue
        tlo, thi = sect[0]
        if thi is None:
            continue
        lower.append((float(s), float(tlo)))
        upper.append((float(s), float(thi)))
    ring = [(flo, float(center.t))] + upper + \
        [(fhi, float(center.t))] + list(reversed(lower))
    pts = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in ring)
    out.append(
        f'<polygon points="{pts}" fill="#e8f0fe" fill-opacity="0.6" '
        'stroke="#224488" stroke-width="0.8"/>')
    out.append(
        f'<circle class="center" data-id="{label}" data-s="{center.s}" '
        f'data-t="{center.t}" cx="{_fmt(px(center.s))}" '
        f'cy="{_fmt(py(center.t))}" r="2" fill="#cc2222"/>')
    out.append(
        f'<text x="{_fmt(px(center.s) + 3)}" '
        f'y="{_fmt(py(center.t) - 3)}" font-size="9">{label}</text>')
    return out


def _strip_diamonds(s: Fraction) -> list:
    """Diamonds of the continuous chain along the vertical line s = 5/3."""
    if s != Fraction(5, 3):
        return []
    out = []
    tri7 = SlopePair(Fraction(5, 3), Fraction(11, 3))
    _, p7 = mds.wpp_curve(WppWeights(5, 11, 18), 7, 220, tri7)
    out.append(("m=7", Diamond(p7, 7), tri7))
    tri4, _, cand4 = new_nonspecial(4)
    out.append(("m=4", Diamond(cand4.poly, 4), tri4.slopes))
    cand11 = detect_negative_curve(
        SlopeTriangle.from_vertices((0, 0), (6, 0), (12, 20)), 11)
    out.append(("m=11", Diamond(cand11.poly, 11),
                SlopePair(Fraction(5, 3), Fraction(10, 3))))
    tri18 = SlopePair(Fraction(5, 3), Fraction(33, 10))
    _, p18 = mds.wpp_curve(WppWeights(5, 33, 49), 18, 1617, tri18)
    out.append(("m=18", Diamond(p18, 18), tri18))
    return out


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------


def _known_diamonds(k_max: int = 8, n_max: int = 3) -> list:
    """Named diamonds used by certify/search/detect lookups."""
    out = [("1-y", mds.one_minus_y_diamond())]
    for K in range(3, k_max + 1):
        pairs = mn_pairs(K, n_max)
        for n in range(1, n_max + 1):
            if len(pairs) <= n:
                break
            sol = pairs[n]
            for kind in ("IT", "RT"):
                out.append((f"{kind}_{K}({sol.M},{sol.N})",
                            family_diamond(K, n, kind)))
    out.append(("special_4", mds.special_diamond(4)))
    tri, _, cand = new_nonspecial(4)
    out.append(("new_4", Diamond(cand.poly, 4)))
    return out


def _cmd_verify(args) -> int:
    entries = load_catalog(args.catalog)
    if args.entry:
        entries = [e for e in entries if e.id == args.entry]
        if not entries:
            print(f"no catalog entry {args.entry!r}", file=sys.stderr)
            return 2
    ok = True
    for e in entries:
        report = catalog_verify(e, deep=args.deep)
        ok = ok and report.passed
        if args.json:
            print(json.dumps(report.to_json(), sort_keys=True))
        else:
            status = "SKIP" if report.skipped else \
                ("PASS" if report.passed else "FAIL")
            print(f"{status} {e.id}")
            for c in report.checks:
                if not c.ok or args.verbose:
                    mark = "ok" if c.ok else "FAIL"
                    print(f"    {mark} {c.field}: {c.detail}")
    return 0 if ok else 1


def _cmd_detect(args) -> int:
    if args.triangle:
        verts = [tuple(parse_fraction(x) for x in v.split(","))
                 for v in args.triangle]
        tri = SlopeTriangle.from_vertices(*verts)
        cand = detect_negative_curve(tri, args.m)
        if cand is None:
            print("no curve found")
            return 1
        print(f"C^2 = {cand.self_intersection}")
        print(f"kernel dimension = {cand.kernel_dimension}")
        print(f"irreducibility: {cand.irreducibility}")
        print(to_text(cand.poly))
        return 0
    p = SlopePair(args.slopes[0], args.slopes[1])
    found = False
    for name, d in _known_diamonds():
        if d.m <= args.m and 0 < p.s < p.t and d.contains(p):
            tri = d.min_triangle(p)
            c2 = 2 * tri.area() - d.m * d.m
            print(f"{name}: m={d.m}, C^2 = {c2}")
            found = True
    if not found:
        print("no known curve at this point (bounded search only)")
    return 0 if found else 1


def _cmd_reduce(args) -> int:
    p = SlopePair(args.slopes[0], args.slopes[1])
    rep, g = to_fundamental_domain(p)
    if isinstance(rep, Degenerate):
        print(f"degenerate orbit: {rep.reason}")
        return 1
    print(f"fundamental domain representative: ({rep.s}, {rep.t})")
    print(f"group element: swap={g.swap} negate={g.negate} shift={g.shift}")
    for edge, r in edge_rebasings(rep).items():
        if isinstance(r, Degenerate):
            print(f"rebase {edge}: degenerate ({r.reason})")
        else:
            print(f"rebase {edge}: ({r.s}, {r.t})")
    return 0


def _cmd_wpp(args) -> int:
    if args.weights:
        w = WppWeights(*args.weights)
        for rep in slopes_of_wpp(w):
            if isinstance(rep, Degenerate):
                print(f"degenerate: {rep.reason}")
            else:
                print(f"({rep.s}, {rep.t})")
        return 0
    p = SlopePair(args.slopes[0], args.slopes[1])
    w = wpp_of_slopes(p)
    if w is None:
        print("not a weighted projective plane (finite quotient)")
        return 1
    print(f"P({w.a},{w.b},{w.c})")
    return 0


def _cmd_degree(args) -> int:
    w = WppWeights(*args.weights)
    found = wpp_degree_search(w, args.m, args.dmax)
    if found is None:
        print(f"no curve of order {args.m} up to degree {args.dmax}")
        return 1
    d, poly = found
    print(f"degree = {d}")
    print(f"terms = {len(poly)}")
    c2 = Fraction(d * d, w.a * w.b * w.c) - args.m ** 2
    print(f"C^2 = {c2}")
    return 0


def _cmd_map(args) -> int:
    spec = MapSpec()
    if args.spec:
        spec = MapSpec.from_dict(json.loads(Path(args.spec).read_text()))
    svg = render_map(spec)
    if args.output == "-":
        sys.stdout.write(svg)
    else:
        Path(args.output).write_text(svg)
    return 0


def _cmd_certify(args) -> int:
    p = SlopePair(args.slopes[0], args.slopes[1])
    homes = [(n, d) for n, d in _known_diamonds()
             if 0 < p.s < p.t and d.contains(p)]
    if not homes:
        print("point is in no known diamond")
        return 1
    code = 1
    for name, home in homes:
        result = None
        for other, neighbor in _known_diamonds():
            if other == name:
                continue
            result = certify_mds(p, home, neighbor)
            if isinstance(result, mds.Mds):
                break
        if isinstance(result, mds.Mds):
            print(f"{name}: MDS via point ({result.point.s}, "
                  f"{result.point.t}); orthogonality "
                  f"{result.orthogonality}; {result.note}")
            code = 0
        else:
            note = result.note if result else "no neighbor"
            print(f"{name}: inconclusive ({note})")
    return code


def _cmd_search(args) -> int:
    s_lo, s_hi, t_lo, t_hi = args.region
    if not (s_lo < s_hi and t_lo < t_hi):
        print("empty region", file=sys.stderr)
        return 2
    hits = []
    for name, d in _known_diamonds():
        if d.m > args.mmax:
            continue
        for k in range(args.samples + 1):
            s = s_lo + (s_hi - s_lo) * Fraction(k, args.samples)
            if s <= 0:
                continue
            sect = diamond_section(d, "vertical", s)
            for lo, hi in sect:
                if (hi is None or hi >= t_lo) and \
                        (lo is None or lo <= t_hi):
                    hits.append((name, d.m))
                    break
            else:
                continue
            break
    for name, m in sorted(set(hits)):
        print(f"{name}: m={m}")
    if not hits:
        print("no known diamond meets the region (bounded evidence only)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tricurves",
        description="Exact negative-curve and MDS computations for "
                    "blowups of toric surfaces from rational triangles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify catalog entries")
    p.add_argument("--entry", help="verify a single entry by id")
    p.add_argument("--all", action="store_true",
                   help="verify every entry (default)")
    p.add_argument("--deep", action="store_true",
                   help="include entries gated behind large computations")
    p.add_argument("--json", action="store_true",
                   help="machine-readable JSON lines")
    p.add_argument("--verbose", action="store_true")
    p.add_argument("--catalog", help="alternate catalog file")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("detect", help="negative curve at a point")
    p.add_argument("--slopes", nargs=2, type=parse_fraction,
                   metavar=("S", "T"))
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--triangle", nargs=3, metavar="X,Y",
                   help="explicit triangle vertices as fractions x,y")
    p.set_defaults(func=_cmd_detect)

    p = sub.add_parser("reduce", help="fundamental domain reduction")
    p.add_argument("--slopes", nargs=2, type=parse_fraction, required=True,
                   metavar=("S", "T"))
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("wpp", help="weighted plane <-> slopes")
    p.add_argument("--weights", nargs=3, type=int, metavar=("A", "B", "C"))
    p.add_argument("--slopes", nargs=2, type=parse_fraction,
                   metavar=("S", "T"))
    p.set_defaults(func=_cmd_wpp)

    p = sub.add_parser("degree", help="smallest Cox degree search")
    p.add_argument("--weights", nargs=3, type=int, required=True,
                   metavar=("A", "B", "C"))
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--dmax", type=int, required=True)
    p.set_defaults(func=_cmd_degree)

    p = sub.add_parser("map", help="render the parameter-space SVG map")
    p.add_argument("--spec", help="MapSpec JSON file")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=_cmd_map)

    p = sub.add_parser("certify", help="MDS certificate at a point")
    p.add_argument("--slopes", nargs=2, type=parse_fraction, required=True,
                   metavar=("S", "T"))
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("search", help="known diamonds meeting a region")
    p.add_argument("--region", nargs=4, type=parse_fraction, required=True,
                   metavar=("S_LO", "S_HI", "T_LO", "T_HI"))
    p.add_argument("--mmax", type=int, default=10)
    p.add_argument("--samples", type=int, default=8)
    p.set_defaults(func=_cmd_search)
    return parser


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "command", None) == "detect" and not args.slopes \
            and not args.triangle:
        print("detect needs --slopes or --triangle", file=sys.stderr)
        return 2
    if getattr(args, "command", None) == "wpp" and not args.weights \
            and not args.slopes:
        print("wpp needs --weights or --slopes", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
