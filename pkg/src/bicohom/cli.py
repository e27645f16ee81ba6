"""Command-line front end: ``bicohom <command> --input <path|builtin:name> [options]``.

Exit status is 0 on success, 2 when the input is well formed but fails a
mathematical check (bicomplex axioms, Jacobi, J^2 = -1, integrability), and 1
for anything malformed (unreadable JSON, schema violations, unknown builtins,
bad flags).  Output is ASCII and depends only on the input and flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import textwrap
from dataclasses import dataclass

from . import cohomology as C
from .bicomplex import Bicomplex, InvalidBicomplex, ShapeMismatch, check, validate
from .exact_linalg import QMatrix, format_gaussian, parse_gaussian
from .formats import ParseError, SchemaError, load_input
from .lie import (ComplexCoframePresentation, JacobiViolation, LieAlgebraPresentation, NotAlmostComplex,
                  NotIntegrable, UnknownExample, central_series, jacobi_check, nijenhuis, to_bicomplex)
from .massey import CohomologyModel, DgaElement, NotClosed, massey_scan, triple_massey
from .zigzag import decompose

COMMANDS = ("validate", "cohomology", "frolicher", "zigzag", "ddbar", "lemma515", "massey",
            "central-series", "inequalities")

BANNER = ("note: these are invariant (Lie-algebra) cohomologies. They agree with the cohomology of a "
          "compact quotient only under extra hypotheses (Nomizu for de Rham on nilmanifolds; "
          "Dolbeault, Bott-Chern and Aeppli need separate results) which are not checked here.")

TITLES = {
    C.DE_RHAM: "de Rham b_k",
    C.DOLBEAULT: "Dolbeault h^{p,q}",
    C.CONJ_DOLBEAULT: "conjugate Dolbeault h^{p,q}",
    C.BOTT_CHERN: "Bott-Chern h^{p,q}",
    C.AEPPLI: "Aeppli h^{p,q}",
}


class UsageError(Exception):
    """Malformed command line or command options (exit 1)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# rendering


def _grid(entries: dict, P: int, Q: int) -> list[str]:
    width = max([len(str(v)) for v in entries.values()] + [1])
    lab = len(str(Q))
    lines = ["q^"]
    for q in range(Q, -1, -1):
        lines.append(f"{str(q).rjust(lab)} | " + " ".join(str(entries.get((p, q), 0)).rjust(width)
                                                     for p in range(P + 1)))
    lines.append(" " * lab + " +" + "-" * ((width + 1) * (P + 1)))
    lines.append(" " * (lab + 3) + " ".join(str(p).rjust(width) for p in range(P + 1)) + "  p->")
    return lines


def render_table(t: C.CohomologyTable, fmt: str = "text"):
    """ASCII grid (text) or a sorted list of ``{p, q, dim}`` records (json)."""
    if fmt == "json":
        if not t.bigraded:
            return [{"k": k, "dim": n} for k, n in sorted(t.entries.items())]
        return [{"p": p, "q": q, "dim": n} for (p, q), n in sorted(t.entries.items())]
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    title = TITLES.get(t.theory, t.theory)
    if not t.bigraded:
        ks = range(t.P + t.Q + 1)
        w = max([len(str(t[k])) for k in ks] + [len(str(k)) for k in ks] + [1])
        return "\n".join([title, "k | " + " ".join(str(k).rjust(w) for k in ks),
                          "b | " + " ".join(str(t[k]).rjust(w) for k in ks)])
    if not t.entries:
        return "\n".join([title, "q^", " +", "    p->"])
    return "\n".join([title] + _grid(t.entries, t.P, t.Q))


def _pairs(entries: dict, key: str = "dim") -> list[dict]:
    return [{"p": p, "q": q, key: n} for (p, q), n in sorted(entries.items())]


def _yes(b: bool) -> str:
    return "YES" if b else "NO"


@dataclass
class _Out:
    stream: object
    color: bool

    def line(self, text: str = ""):
        self.stream.write(text + "\n")

    def head(self, text: str):
        self.line(f"\x1b[1m{text}\x1b[0m" if self.color else text)


def _color_enabled(stream) -> bool:
    if os.environ.get("BICOHOM_COLOR", "1") == "0":
        return False
    isatty = getattr(stream, "isatty", None)
    return bool(isatty and isatty())


# ---------------------------------------------------------------------------
# inputs


def _is_lie(obj) -> bool:
    return isinstance(obj, (LieAlgebraPresentation, ComplexCoframePresentation))


def _bicomplex(obj) -> Bicomplex:
    B = obj if isinstance(obj, Bicomplex) else to_bicomplex(obj)
    return check(B)


def _lie_algebra(obj, command: str) -> LieAlgebraPresentation:
    if isinstance(obj, LieAlgebraPresentation):
        return obj
    if isinstance(obj, ComplexCoframePresentation):
        return obj.lie_algebra()
    raise UsageError(f"'{command}' needs a Lie algebra input, not a raw bicomplex")


# ---------------------------------------------------------------------------
# commands


def cmd_validate(obj, args, out: _Out) -> tuple[dict, int]:
    checks = []

    def add(name, ok, detail=""):
        checks.append({"check": name, "ok": ok, "detail": detail})

    B = None
    if isinstance(obj, LieAlgebraPresentation):
        jr = jacobi_check(obj)
        add("Jacobi identity", jr.ok, "" if jr.ok else "fails on x%d, x%d, x%d" % jr.triple)
        if obj.complex_structure is None:
            add("complex structure", True, "none given; only de Rham data available")
        else:
            try:
                obj.complex_structure.check()
                add("J^2 = -1", True)
                if jr.ok:
                    nr = nijenhuis(obj)
                    bad = nr.nonzero()
                    add("Nijenhuis tensor vanishes", nr.is_integrable,
                        "" if not bad else "N_J(x%d, x%d) != 0" % bad[0])
                    if nr.is_integrable:
                        B = to_bicomplex(obj)
            except NotAlmostComplex as exc:
                add("J^2 = -1", False, str(exc))
    elif isinstance(obj, ComplexCoframePresentation):
        dga = obj.dga()
        ok = dga.d_squared_zero()
        add("d^2 = 0", ok)
        if ok:
            try:
                B = to_bicomplex(obj)
                add("no (0,2) components", True)
            except NotIntegrable as exc:
                add("no (0,2) components", False, str(exc))
    else:
        B = obj
    if B is not None:
        rep = validate(B)
        detail = "; ".join(f"{name} fails at ({p},{q})" for name, (p, q) in rep.violations)
        add("bicomplex axioms", rep.ok, detail)
    valid = all(c["ok"] for c in checks)
    if not out_json(args):
        for c in checks:
            out.line(f"{c['check']}: {'ok' if c['ok'] else 'FAILED'}" + (f" ({c['detail']})" if c["detail"] else ""))
        out.line(f"valid: {_yes(valid)}")
    return {"valid": valid, "checks": checks}, 0 if valid else 2


def cmd_cohomology(obj, args, out: _Out) -> tuple[dict, int]:
    B = _bicomplex(obj)
    tables = C.all_tables(B)
    ds = C.deltas(B)
    b = [tables[C.DE_RHAM][k] for k in range(B.top_degree + 1)]
    data = {"b": b, "delta": ds, "P": B.P, "Q": B.Q,
            "tables": {t: render_table(tables[t], "json") for t in C.THEORIES if t != C.DE_RHAM}}
    if _is_lie(obj):
        data["banner"] = BANNER
    if not out_json(args):
        if _is_lie(obj):
            out.line(textwrap.fill(BANNER, 78))
            out.line()
        out.head(TITLES[C.DE_RHAM])
        out.line(f"b = {b}")
        for t in (C.DOLBEAULT, C.CONJ_DOLBEAULT, C.BOTT_CHERN, C.AEPPLI):
            out.line()
            out.head(TITLES[t])
            out.line("\n".join(render_table(tables[t]).splitlines()[1:]))
        out.line()
        out.line(f"Delta_k = {ds}")
    return data, 0


def _page_json(page: C.SpectralPage) -> dict:
    return {"r": page.r, "entries": _pairs(page.entries),
            "d_ranks": _pairs({pq: n for pq, n in page.differential_ranks.items() if n}, "rank")}


def cmd_frolicher(obj, args, out: _Out) -> tuple[dict, int]:
    B = _bicomplex(obj)
    pages = C.frolicher(B)
    last = pages[-1]
    if args.page is not None:
        if args.page < 1:
            raise UsageError("--page must be at least 1")
        if args.page <= last.r:
            shown = [pages[args.page - 1]]
        else:
            shown = [C.SpectralPage(args.page, dict(last.entries), {pq: 0 for pq in last.entries})]
    else:
        shown = pages
    b = [C.de_rham(B)[k] for k in range(B.top_degree + 1)]
    data = {"pages": [_page_json(p) for p in shown], "degenerates_at": last.r, "b": b,
            "E1_equals_Einf": last.r == 1}
    if not out_json(args):
        for i, page in enumerate(shown):
            if i:
                out.line()
            out.head(f"E_{page.r}")
            out.line("\n".join(_grid(page.entries, B.P, B.Q)))
            ranks = [f"({p},{q}): {n}" for (p, q), n in sorted(page.differential_ranks.items()) if n]
            out.line(f"rank d_{page.r}: " + (", ".join(ranks) if ranks else "all zero"))
        out.line()
        out.line(f"degenerates at E_{last.r}; b = {b}")
    return data, 0


def cmd_zigzag(obj, args, out: _Out) -> tuple[dict, int]:
    B = _bicomplex(obj)
    D = decompose(B)
    shapes = [{"shape": str(s), "kind": s.kind, "p": s.p, "q": s.q, "first_step": s.first_step,
               "length": s.length, "multiplicity": m} for s, m in D.shapes()]
    data = {"shapes": shapes, "only_dots_and_squares": D.only_dots_and_squares()}
    if not out_json(args):
        out.head("indecomposable summands")
        out.line(D.render())
        out.line(f"dots and squares only: {_yes(D.only_dots_and_squares())}")
    return data, 0


def cmd_ddbar(obj, args, out: _Out) -> tuple[dict, int]:
    B = _bicomplex(obj)
    res = C.satisfies_ddbar(B)
    nonzero = {k: d for k, d in enumerate(res.deltas) if d}
    bad = sorted(pq for pq, ok in res.injective.items() if not ok)
    data = {"holds": res.holds, "delta": res.deltas, "nonzero": [{"k": k, "delta": d} for k, d in nonzero.items()],
            "bc_to_aeppli_not_injective": [list(pq) for pq in bad]}
    if not out_json(args):
        out.line(f"ddbar-lemma: {_yes(res.holds)}; Delta = {res.deltas}")
        for k, d in nonzero.items():
            out.line(f"  Delta_{k} = {d}")
        if bad:
            out.line("H_BC -> H_A fails to be injective at " + ", ".join(f"({p},{q})" for p, q in bad))
    return data, 0


def cmd_lemma515(obj, args, out: _Out) -> tuple[dict, int]:
    B = _bicomplex(obj)
    ks = range(1, B.top_degree + 1) if args.degree is None else [args.degree]
    if args.degree is not None and not 1 <= args.degree <= B.top_degree:
        raise UsageError(f"--degree must lie in 1..{B.top_degree}")
    rows = []
    for k in ks:
        vals = C.lemma_515(B, k)
        rows.append({"k": k, "conditions": dict(zip(C.LEMMA_515_LABELS, vals)), "agree": len(set(vals)) == 1})
    data = {"degrees": rows, "all_agree": all(r["agree"] for r in rows)}
    if not out_json(args):
        for r in rows:
            cells = "  ".join(f"{lab}={'T' if v else 'F'}" for lab, v in r["conditions"].items())
            out.line(f"k={r['k']}: {cells}  {'agree' if r['agree'] else 'DISAGREE'}")
    return data, 0


def _vector_text(model: CohomologyModel, x: DgaElement) -> str:
    dga = model.dga
    terms = []
    for mono, c in zip(dga.basis(x.degree), x.coords.entries()):
        if c:
            terms.append(f"({format_gaussian(c)}) {dga.label(mono)}")
    return " + ".join(terms) if terms else "0"


def _parse_classes(spec: str, model: CohomologyModel) -> list[DgaElement]:
    """``"1:0,1:0,1:1"`` or a JSON array of ``{"degree", "index"}`` / ``{"degree", "coords"}``."""
    spec = spec.strip()
    items = []
    if spec.startswith("["):
        try:
            raw = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--classes: {exc.msg} at column {exc.colno}") from None
        for it in raw:
            if not isinstance(it, dict) or "degree" not in it or ("index" in it) == ("coords" in it):
                raise UsageError("--classes: each entry needs 'degree' and exactly one of 'index', 'coords'")
            items.append(it)
    else:
        for part in spec.split(","):
            k, sep, i = part.partition(":")
            if not sep or not k.strip().isdigit() or not i.strip().isdigit():
                raise UsageError(f"--classes: expected degree:index, got {part!r}")
            items.append({"degree": int(k), "index": int(i)})
    if len(items) != 3:
        raise UsageError("--classes: exactly three classes are needed for a triple product")
    out = []
    for it in items:
        k = it["degree"]
        if not isinstance(k, int) or not 0 <= k <= model.top:
            raise UsageError(f"--classes: degree {k!r} out of range 0..{model.top}")
        if "index" in it:
            try:
                out.append(model.basis_class(k, it["index"]))
            except (IndexError, TypeError) as exc:
                raise UsageError(f"--classes: {exc}") from None
        else:
            try:
                x = model.element(k, QMatrix.column([_scalar(v) for v in it["coords"]]))
            except (ValueError, TypeError) as exc:
                raise UsageError(f"--classes: {exc}") from None
            out.append(x)
    return out


def _scalar(v):
    if isinstance(v, bool):
        raise ValueError("booleans are not coordinates")
    return v if isinstance(v, int) else parse_gaussian(str(v))


def cmd_massey(obj, args, out: _Out) -> tuple[dict, int]:
    if not _is_lie(obj):
        raise UsageError("'massey' needs a Lie algebra input, not a raw bicomplex")
    g = _lie_algebra(obj, "massey")
    jr = jacobi_check(g)
    if not jr.ok:
        raise JacobiViolation("Jacobi identity fails on x%d, x%d, x%d" % jr.triple)
    model = CohomologyModel(obj.dga())
    if args.classes is not None:
        a, b, c = _parse_classes(args.classes, model)
        try:
            res = triple_massey(model, a, b, c)
        except NotClosed as exc:
            raise UsageError(f"--classes: {exc}") from None
        data = {"defined": res.defined, "reason": res.reason}
        if res.defined:
            data.update(vanishes=res.vanishes, degree=res.representative.degree,
                        representative=[format_gaussian(z) for z in res.representative.coords.entries()],
                        class_coords=[format_gaussian(z) for z in res.class_coords.entries()],
                        indeterminacy_dim=res.indeterminacy.dim)
        if not out_json(args):
            out.line(f"defined: {_yes(res.defined)}" + (f" ({res.reason})" if res.reason else ""))
            if res.defined:
                out.line(f"representative: {_vector_text(model, res.representative)}")
                out.line("class: [" + ", ".join(data["class_coords"]) + "]")
                out.line(f"indeterminacy dimension: {res.indeterminacy.dim}")
                out.line(f"vanishes: {_yes(res.vanishes)}")
        return data, 0
    max_degree = 2 if args.degree is None else args.degree
    if max_degree < 2:
        raise UsageError("--degree for a Massey scan must be at least 2")
    found = massey_scan(model, max_degree)
    betti = [model.betti(k) for k in range(model.top + 1)]
    wit = [{"classes": [list(ix) for ix in w.indices],
            "representative": _vector_text(model, w.result.representative)} for w in found]
    data = {"betti": betti, "max_degree": max_degree, "witnesses": wit}
    if not out_json(args):
        out.line(f"betti numbers: {betti}")
        out.line(f"triple products of basis classes with target degree <= {max_degree}")
        if not found:
            out.line("no non-vanishing product found (this does not certify formality)")
        for w in wit:
            cls = ", ".join(f"H^{k}[{i}]" for k, i in w["classes"])
            out.line(f"  <{cls}> = [{w['representative']}] != 0")
    return data, 0


def cmd_central_series(obj, args, out: _Out) -> tuple[dict, int]:
    g = _lie_algebra(obj, "central-series")
    dims, step = central_series(g)
    data = {"dims": dims, "nilpotent": step != "not nilpotent", "step": step if step != "not nilpotent" else None}
    if not out_json(args):
        out.line(f"dim Z^i: {dims}")
        out.line(f"nilpotent of step {step}" if data["nilpotent"] else "not nilpotent")
    return data, 0


def cmd_inequalities(obj, args, out: _Out) -> tuple[dict, int]:
    B = _bicomplex(obj)
    n = max(B.P, B.Q)
    rep = C.inequality_suite(B, n)
    checks = [{"bound": name, "k": k, "lhs": str(lhs), "rhs": str(rhs), "holds": ok}
              for name, k, lhs, rhs, ok in rep.checks]
    data = {"n": n, "checks": checks, "violations": len(rep.violations),
            "ddbar_characterization": rep.ddbar_characterization}
    if not out_json(args):
        for name in rep.names:
            out.head(name)
            for c in (c for c in checks if c["bound"] == name):
                out.line(f"  k={c['k']}: {c['lhs']} <= {c['rhs']}  {'ok' if c['holds'] else 'VIOLATED'}")
        out.line(f"violations: {len(rep.violations)}")
        out.line(f"h_A = h_BC in every degree iff ddbar-lemma: {'consistent' if rep.ddbar_characterization else 'INCONSISTENT'}")
    return data, 0


HANDLERS = {
    "validate": cmd_validate,
    "cohomology": cmd_cohomology,
    "frolicher": cmd_frolicher,
    "zigzag": cmd_zigzag,
    "ddbar": cmd_ddbar,
    "lemma515": cmd_lemma515,
    "massey": cmd_massey,
    "central-series": cmd_central_series,
    "inequalities": cmd_inequalities,
}


def out_json(args) -> bool:
    return bool(args.json)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bicohom", description="Exact cohomology of bounded double complexes.")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, help="JSON file or builtin:<name>")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if name == "frolicher":
            p.add_argument("--page", type=int, help="show only page r")
        if name in ("lemma515", "massey"):
            p.add_argument("--degree", type=int,
                           help="total degree (lemma515) or maximal target degree of a scan (massey)")
        if name == "massey":
            p.add_argument("--classes", help="three classes: 'k:i,k:i,k:i' or a JSON array")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        stderr.write(f"bicohom: error: {exc}\n")
        return 1
    out = _Out(stdout, _color_enabled(stdout) and not args.json)
    try:
        obj = load_input(args.input)
        data, code = HANDLERS[args.command](obj, args, out)
    except (ParseError, SchemaError, UnknownExample, UsageError, ShapeMismatch) as exc:
        stderr.write(f"bicohom: malformed input: {exc}\n")
        return 1
    except InvalidBicomplex as exc:
        stderr.write("bicohom: invalid bicomplex:\n")
        for name, (p, q) in exc.report.violations:
            stderr.write(f"  {name} fails at ({p},{q})\n")
        return 2
    except (JacobiViolation, NotAlmostComplex, NotIntegrable) as exc:
        stderr.write(f"bicohom: {type(exc).__name__}: {exc}\n")
        return 2
    if args.json:
        data = {"command": args.command, "input": args.input, **data}
        stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
