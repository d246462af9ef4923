"""Command line front end: ``linkforge <command> ...``.

Every command prints one JSON document (sorted keys) on stdout and a short
human summary on stderr.  Exit status: 0 success, 1 domain error or bad
input file, 2 usage error.
"""
import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import bingtree, diagram, foxcalc, milnor, repsearch, signatures, tangle, wirtinger
from .fpgroup import evaluate, format_word

FIXTURE_ENV = "LINKFORGE_FIXTURES"


class CommandError(Exception):
    pass


def fixture_dir():
    env = os.environ.get(FIXTURE_ENV)
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "fixtures"


def resolve(path):
    """Use ``path`` if it exists, else look its basename up in the fixture directory."""
    p = Path(path)
    if p.exists():
        return p
    alt = fixture_dir() / p.name
    if alt.exists():
        return alt
    raise CommandError(f"file not found: {path}")


_inputs = {}


def read(path):
    p = resolve(path)
    data = p.read_bytes()
    _inputs[str(p)] = hashlib.sha256(data).hexdigest()
    return data.decode()


def load_diagram(path):
    return diagram.parse_pd(read(path))


def load_group(path):
    """A .pd file gives its Wirtinger presentation; anything else is read as .fpg."""
    text = read(path)
    if Path(path).suffix == ".pd":
        return wirtinger.wirtinger_presentation(diagram.parse_pd(text))
    return wirtinger.load_presentation(text)


def _components(text, m):
    if text is None:
        return list(range(1, m + 1))
    return [int(x) for x in text.replace(",", " ").split()]


def _poly(p):
    return {"nvars": p.nvars, "terms": p.to_json(), "text": p.to_str()}


# --- commands ------------------------------------------------------------------

def cmd_parse(args):
    D = load_diagram(args.file)
    out = {
        "components": D.component_count,
        "crossings": [list(x) for x in D.crossings],
        "signs": list(D.signs),
        "first_arc": {str(k): v for k, v in D.first_arc.items()},
        "arc_component": {str(e): c for e, c in sorted(D.arc_component.items())},
    }
    return out, f"{D.component_count} components, {len(D.crossings)} crossings"


def cmd_lk(args):
    D = load_diagram(args.file)
    M = diagram.linking_matrix(D)
    return {"linking_matrix": M}, f"linking matrix {M}"


def _presentation_json(P):
    return {
        "generators": P.generator_count,
        "relators": [format_word(r) for r in P.relators],
        "meridians": {str(k): g for k, g in sorted(P.meridian_of_component.items())},
        "longitudes": {str(k): format_word(w)
                       for k, w in sorted(P.longitude_of_component.items())},
    }


def cmd_wirtinger(args):
    P = wirtinger.wirtinger_presentation(load_diagram(args.file))
    return _presentation_json(P), f"{P.generator_count} generators, {len(P.relators)} relators"


def cmd_surgery(args):
    D = load_diagram(args.file)
    P = wirtinger.zero_surgery_presentation(D, _components(args.components, D.component_count))
    if args.out:
        Path(args.out).write_text(P.render())
    return _presentation_json(P), f"{P.generator_count} generators, {len(P.relators)} relators"


def cmd_alex(args):
    D = load_diagram(args.file)
    delta = foxcalc.alexander_poly(D, args.component)
    out = {"alexander": _poly(delta)}
    if delta.nvars >= 2:
        out["one_variable"] = _poly(foxcalc.one_variable(delta))
    return out, f"Delta = {delta}"


def cmd_conway(args):
    D = load_diagram(args.file)
    sign = 1
    if D.component_count == 2:
        sign = diagram.linking_number(D, 1, 2) or 1
    nabla = foxcalc.conway_from_alexander(foxcalc.knot_alexander(D), sign)
    out = {"conway": nabla, "text": foxcalc.format_conway(nabla)}
    if D.component_count == 3:
        out["mu123_squared"] = foxcalc.mu123_squared(nabla)
    return out, f"Nabla = {out['text']}"


def cmd_arf(args):
    D = load_diagram(args.file)
    if D.component_count != 1:
        raise CommandError("arf needs a knot")
    delta = foxcalc.alexander_poly(D)
    value = foxcalc.arf_invariant(delta)
    return {"arf": value, "delta_at_minus_one": abs(delta(-1))}, f"Arf = {value}"


def cmd_torres(args):
    D = load_diagram(args.file)
    m = D.component_count
    if m < 2:
        raise CommandError("torres needs at least two components")
    delta = foxcalc.alexander_poly(D)
    rest = diagram.sublink(D, list(range(2, m + 1)))
    sub = foxcalc.alexander_poly(rest)
    lk = diagram.linking_matrix(D)[0][1:]
    ok = foxcalc.torres_check(delta, sub, lk)
    return {"holds": ok, "linking": lk}, f"Torres condition {'holds' if ok else 'fails'}"


def cmd_milnor(args):
    D = load_diagram(args.file)
    if args.upto:
        table = milnor.mu_all_upto(D, args.upto)
        out = {"table": {k: {"value": v, "indeterminacy": d} for k, (v, d) in table.items()}}
        nz = sum(1 for v, _ in table.values() if v)
        return out, f"{len(table)} invariants, {nz} nonzero"
    if not args.index:
        raise CommandError("give --index or --upto")
    value, delta = milnor.milnor_mu(D, args.index)
    return ({"index": args.index, "value": value, "indeterminacy": delta},
            f"mu({args.index}) = {value} (mod {delta})")


def cmd_tree(args):
    T = bingtree.build_tree(args.m)
    out = {"h": bingtree.height_h(args.m), "k": bingtree.height_k(args.m),
           "leaf_depths": T.leaf_depths()}
    return out, f"T({args.m}) leaf depths {out['leaf_depths']}"


def _diagram_out(D, out_path):
    text = D.render()
    if out_path:
        Path(out_path).write_text(text)
    return {"components": D.component_count, "crossings": len(D.crossings), "pd": text}


def cmd_bing(args):
    D = bingtree.link_for_index(args.index)
    return _diagram_out(D, args.out), f"{D.component_count} components, {len(D.crossings)} crossings"


def cmd_satellite(args):
    D = load_diagram(args.file)
    if args.axis:
        if not args.companion:
            raise CommandError("--axis needs --companion")
        K = load_diagram(args.companion)
        edges = [int(x) for x in args.axis.replace(",", " ").split()]
        S = tangle.infect(D, edges, K)
    else:
        pat = args.pattern
        if pat == "bing":
            P = tangle.bing_pattern()
        elif pat.startswith("cable:"):
            P = tangle.identity_pattern(int(pat.split(":", 1)[1]))
        elif pat == "identity":
            P = tangle.identity_pattern(1)
        else:
            raise CommandError(f"unknown pattern {pat!r}")
        S = tangle.satellite(D, args.component, P)
    return _diagram_out(S, args.out), f"{S.component_count} components, {len(S.crossings)} crossings"


def cmd_repsearch(args):
    P = load_group(args.file)
    cfg = repsearch.SearchConfig(p=args.p, max_solutions=args.max, worker_count=args.workers)
    if args.word:
        if args.word not in P.words:
            raise CommandError(f"presentation has no word named {args.word!r}")
        found = repsearch.witness_nontrivial(P, P.words[args.word], cfg)
        if found is None:
            return {"p": args.p, "word": args.word, "found": False}, "no witness"
        sol, img = found
        out = {"p": args.p, "word": args.word, "found": True,
               "solution": repsearch.matrices_to_json(sol), "image": img.rows()}
        return out, f"witness found, image {img.rows()}"
    sols = sorted(repsearch.matrices_to_json(s) for s in repsearch.search(P, cfg))
    return {"p": args.p, "count": len(sols), "solutions": sols}, f"{len(sols)} solutions"


def cmd_verify(args):
    P = load_group(args.file)
    data = json.loads(read(args.rep))
    p = data.get("p", args.p)
    sol = repsearch.matrices_from_json(data["matrices"], p)
    ok, bad = repsearch.verify(P, sol)
    out = {"valid": ok, "failing_relators": bad}
    for name, w in P.words.items():
        img = evaluate(w, [None] + sol, repsearch.FpMatrix2.identity(p))
        out[f"{name}_image"] = img.rows()
    return out, "all relators hold" if ok else f"{len(bad)} relators fail"


def cmd_rho(args):
    V = signatures.load_seifert_csv(read(args.seifert))
    rho = signatures.rho_knot(V)
    out = {"rho": rho, "jumps": signatures.jump_angles(V)}
    return out, f"rho = {rho:.12g}"


def cmd_nj(args):
    N = signatures.choose_Nj(args.R, args.count)
    return {"R": args.R, "N": N}, f"N = {N}"


def build_parser():
    ap = argparse.ArgumentParser(prog="linkforge", description=__doc__.splitlines()[0])
    ap.add_argument("--report", help="also write a run report (inputs, hashes, wall time) here")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, file_arg=True):
        sp = sub.add_parser(name, help=help_text)
        if file_arg:
            sp.add_argument("file")
        sp.set_defaults(func=func)
        return sp

    add("parse", cmd_parse, "validate a PD file")
    add("lk", cmd_lk, "linking matrix")
    add("wirtinger", cmd_wirtinger, "Wirtinger presentation")
    sp = add("surgery", cmd_surgery, "zero-surgery presentation")
    sp.add_argument("--components", help="components to surger, e.g. 1,2 (default all)")
    sp.add_argument("--out", help="write the presentation as .fpg")
    sp = add("alex", cmd_alex, "Alexander polynomial")
    sp.add_argument("--component", type=int, default=1, help="meridian column to delete")
    add("conway", cmd_conway, "Conway polynomial")
    add("arf", cmd_arf, "Arf invariant of a knot")
    add("torres", cmd_torres, "Torres condition for component 1")
    sp = add("milnor", cmd_milnor, "Milnor invariants")
    sp.add_argument("--index")
    sp.add_argument("--upto", type=int)
    sp = add("tree", cmd_tree, "the tree T(m)", file_arg=False)
    sp.add_argument("--m", type=int, required=True)
    sp = add("bing", cmd_bing, "iterated Bing double for a multi-index", file_arg=False)
    sp.add_argument("--index", required=True)
    sp.add_argument("--out")
    sp = add("satellite", cmd_satellite, "satellite or infection")
    sp.add_argument("--component", type=int, default=1)
    sp.add_argument("--pattern", default="bing", help="bing, identity or cable:N")
    sp.add_argument("--axis", help="edges crossed by the axis arc, e.g. 3,1")
    sp.add_argument("--companion", help="knot PD file used with --axis")
    sp.add_argument("--out")
    sp = add("repsearch", cmd_repsearch, "search SL(2,p) representations")
    sp.add_argument("--p", type=int, default=5)
    sp.add_argument("--max", type=int)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--word", help="named word that must map off the identity")
    sp = add("verify", cmd_verify, "check a representation")
    sp.add_argument("rep")
    sp.add_argument("--p", type=int, default=5)
    sp = add("rho", cmd_rho, "signature integral from a Seifert matrix", file_arg=False)
    sp.add_argument("--seifert", required=True)
    sp = add("nj", cmd_nj, "the N_j sequence", file_arg=False)
    sp.add_argument("--R", type=float, required=True)
    sp.add_argument("--count", type=int, required=True)
    return ap


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    start = time.perf_counter()
    _inputs.clear()
    try:
        out, summary = args.func(args)
    except (CommandError, ValueError, ArithmeticError, OSError) as exc:
        print(f"linkforge {args.command}: error: {exc}", file=stderr)
        return 1
    elapsed = time.perf_counter() - start
    json.dump(out, stdout, sort_keys=True)
    stdout.write("\n")
    print(f"{args.command}: {summary} ({elapsed:.2f}s)", file=stderr)
    if args.report:
        report = {"command": args.command, "argv": list(argv if argv is not None else sys.argv[1:]),
                  "inputs": [{"path": k, "sha256": v} for k, v in sorted(_inputs.items())],
                  "outputs": out, "wall_time": elapsed}
        Path(args.report).write_text(json.dumps(report, sort_keys=True, indent=2) + "\n")
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
