"""Command-line front end.

Every subcommand builds a report ``{command, inputs, result, checks}``.  With
``--json`` it is printed as JSON, otherwise as indented text.  Exit status:
0 on success, 1 on a domain error or a failed check, 2 on malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bundles, lie, linalg, nilpotent, sl2
from .errors import AlgebraError
from .laurent import LaurentMatrix
from .linalg import Flag, QMatrix, Subspace, span


class InputError(Exception):
    """Malformed command-line input or input file."""


# -- serialization --------------------------------------------------------------

def _q(x: Fraction) -> str:
    return str(x)


def _vec(v) -> list[str]:
    return [_q(x) for x in v]


def _space(S: Subspace) -> list[list[str]]:
    return [_vec(v) for v in S.vectors()]


def _weights(w: sl2.WeightMultiset) -> list[int]:
    return w.as_list()


# -- input parsing -------------------------------------------------------------

def _load(path: str | None):
    if path is None:
        raise InputError("--input FILE is required")
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _parse(fn, obj, what: str):
    try:
        return fn(obj)
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"bad {what}: {exc}") from exc


def _matrix(obj) -> QMatrix:
    return _parse(QMatrix.from_json, obj, "matrix")


def _square(obj) -> QMatrix:
    M = _matrix(obj)
    if not M.is_square:
        raise InputError("matrix must be square")
    return M


def _laurent(obj) -> LaurentMatrix:
    T = _parse(LaurentMatrix.from_json, obj, "Laurent matrix")
    if T.rows != T.cols:
        raise InputError("Laurent matrix must be square")
    return T


def _rationals(text: str | None, what: str) -> list[Fraction]:
    if text is None:
        raise InputError(f"--{what} is required")
    try:
        return [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad --{what}: {text!r}") from exc


def _integers(text: str | None, what: str) -> list[int]:
    vals = _rationals(text, what)
    if any(v.denominator != 1 for v in vals):
        raise InputError(f"--{what} must list integers")
    return [int(v) for v in vals]


def _need(value, flag: str):
    if value is None:
        raise InputError(f"{flag} is required")
    return value


# -- subcommands ---------------------------------------------------------------
# each returns (inputs, result, checks)

def cmd_splitting_type(args):
    T = _laurent(_load(args.input))
    c, d = bundles.validate_transition(T)
    s = bundles.splitting_type(T)
    checks = [
        ("rank", s.rank == T.rows),
        ("sum_equals_det_exponent", s.degree == d),
    ]
    return {"T": T.to_json()}, {"exponents": list(s.exponents), "det": {"c": _q(c), "d": d}}, checks


def cmd_birkhoff(args):
    T = _laurent(_load(args.input))
    f = bundles.birkhoff_factorize(T, order=args.order)
    result = {
        "order": f.order,
        "D": list(f.D.exponents),
        "T_plus": f.T_plus.to_json(),
        "T_minus": f.T_minus.to_json(),
    }
    checks = list(f.checks)
    if f.order == "plus-minus":
        checks.append(("D_is_splitting_type", f.D == bundles.splitting_type(T)))
    return {"T": T.to_json()}, result, checks


def cmd_h0(args):
    T = _laurent(_load(args.input))
    n = _need(args.n, "--n")
    h = bundles.h0_twisted(T, n, recheck=True)
    return {"T": T.to_json(), "n": n}, {"h0": h}, [("degree_bound_stable", True)]


def cmd_nilpotent(args):
    A = _square(_load(args.input))
    prof = nilpotent.nilpotent_profile(A)
    chains = nilpotent.jordan_basis(A)
    basis = [v for ch in chains for v in ch]
    checks = [
        ("partition_sums_to_dim", sum(prof.partition) == A.rows),
        ("partition_conjugate_to_kernel_jumps",
         nilpotent.conjugate_partition(prof.partition)
         == tuple(b - a for a, b in zip((0,) + prof.ker_dims, prof.ker_dims))),
        ("jordan_chains_form_basis", span(basis, A.rows).dim == A.rows if A.rows else True),
    ]
    result = {
        "degree": prof.degree,
        "ker_dims": list(prof.ker_dims),
        "im_dims": list(prof.im_dims),
        "partition": list(prof.partition),
        "jordan_chains": [[_vec(v) for v in ch] for ch in chains],
    }
    return {"A": A.to_json()}, result, checks


def cmd_orbit(args):
    A = _square(_load(args.input))
    u = _rationals(args.vector, "vector")
    oc = nilpotent.orbit_curve(A, u)
    j = oc.degree
    in_ker = linalg.kernel(A ** (j + 1)).contains(u) and not linalg.kernel(A**j).contains(u)
    return (
        {"A": A.to_json(), "u": _vec(u)},
        {"degree": j, "coefficient_vectors": [_vec(v) for v in oc.coefficient_vectors]},
        [("u_in_ker_Aj+1_minus_ker_Aj", in_ker)],
    )


def _flag_from_json(obj, direction: str, d: int) -> Flag:
    if not isinstance(obj, list):
        raise InputError("a flag is a list of spaces, each a list of spanning vectors")

    def build(o):
        spaces = []
        for vecs in o:
            if not isinstance(vecs, list):
                raise ValueError("space must be a list of vectors")
            rows = [[Fraction(x) for x in v] for v in vecs]
            if any(len(r) != d for r in rows):
                raise ValueError("vector length differs from ambient_dim")
            spaces.append(span(rows, d))
        return Flag(direction, spaces, d)

    return _parse(build, obj, f"{direction} flag")


def cmd_flags(args):
    obj = _load(args.input)
    if not isinstance(obj, dict):
        raise InputError("flags file must be a JSON object")
    if "A" in obj and "B" in obj:
        A, B = _square(obj["A"]), _square(obj["B"])
        if A.shape != B.shape:
            raise InputError("A and B must have the same size")
        k = nilpotent.nilpotency_degree(A) - 1
        U, V = nilpotent.standard_flag_pair(A, B, k)
        inputs = {"A": A.to_json(), "B": B.to_json()}
    else:
        d = obj.get("ambient_dim")
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise InputError("ambient_dim must be a non-negative integer")
        U = _flag_from_json(obj.get("U"), "ascending", d)
        V = _flag_from_json(obj.get("V"), "descending", d)
        inputs = {"ambient_dim": d}
    inputs.update(U=[_space(S) for S in U], V=[_space(S) for S in V])
    ok = nilpotent.check_complementary_flags(U, V)
    result = {"complementary": ok}
    checks = []
    if ok:
        D = nilpotent.flag_refinement(U, V)
        result["refinement"] = [_space(S) for S in D]
        ok_ref = all(linalg.is_direct_sum(U[j - 1], D[j - 1], whole=U[j]) for j in range(1, len(U)))
        checks.append(("refinement_direct_sums", ok_ref))
    return inputs, result, checks


def _triple_json(t: sl2.Sl2Triple) -> dict:
    return {"A": t.A.to_json(), "H": t.H.to_json(), "B": t.B.to_json()}


def cmd_sl2_complete(args):
    A = _square(_load(args.input))
    t = sl2.jacobson_morozov(A)
    w = sl2.weight_multiset(t.H)
    return {"A": A.to_json()}, {**_triple_json(t), "weights": _weights(w)}, [("sl2_relations", t.satisfies_relations())]


def cmd_sl2_projection(args):
    obj = _load(args.input)
    if not isinstance(obj, dict) or "A" not in obj or "B" not in obj:
        raise InputError('projection file must be {"A": matrix, "B": matrix}')
    A, B = _square(obj["A"]), _square(obj["B"])
    if A.shape != B.shape:
        raise InputError("A and B must have the same size")
    p = sl2.sl2_flags_and_projection(A, B)
    result = {
        "k": p.k,
        "U": [_space(S) for S in p.U],
        "V": [_space(S) for S in p.V],
        "P": p.P.to_json(),
        "c": _q(p.c),
        "B_rescaling": _q(p.scale),
        "H": p.triple.H.to_json(),
    }
    return {"A": A.to_json(), "B": B.to_json()}, result, list(p.checks)


def cmd_clebsch_gordan(args):
    m, n = _need(args.m, "--m"), _need(args.n, "--n")
    if m < 0 or n < 0:
        raise InputError("--m and --n must be non-negative")
    parts = sl2.clebsch_gordan(m, n)
    dims = sum(p + 1 for p in parts) == (m + 1) * (n + 1)
    return {"m": m, "n": n}, {"summands": parts}, [("dimension_count", dims)]


def cmd_identify(args):
    ws = _integers(args.weights, "weights")
    w = sl2.WeightMultiset.from_list(ws)
    ident = sl2.identify_twisted_irrep(w)
    result = {"identification": None if ident is None else list(ident)}
    checks = []
    if ident is not None:
        checks.append(("weights_match", sl2.twisted_irrep_weights(ident[1], ident[0]) == w))
    return {"weights": _weights(w)}, result, checks


def cmd_veronese(args):
    n = _need(args.n, "--n")
    quotient, ident = sl2.veronese_weights(n)
    s = bundles.cokernel_splitting(n)
    m, k = ident
    result = {
        "quotient_weights": _weights(quotient),
        "identification": [m, k],
        "cokernel_splitting": list(s.exponents),
    }
    checks = [
        ("weights_2n_down_to_4", _weights(quotient) == list(range(2 * n, 3, -2))),
        ("identification_n+2_n-2", ident == (n + 2, n - 2)),
        ("routes_agree", list(s.exponents) == [m] * (k + 1)),
    ]
    return {"n": n}, result, checks


def cmd_lie(args):
    obj = _load(args.input)
    L = _parse(lie.LieBasis.from_json, obj, "Lie basis")
    rep = lie.structure_report(L)
    com = lie.commutant_dimension(L)
    N = lie.find_nilpotent(L, seed=args.seed)
    result = {
        "dim": L.dim,
        "was_closed": L.was_closed,
        "basis": [g.to_json() for g in L.generators],
        "is_abelian": rep.is_abelian,
        "derived_dim": rep.derived.dim,
        "center_dim": rep.center_dim,
        "killing_gram": rep.killing_gram.to_json(),
        "is_killing_nondegenerate": rep.is_killing_nondegenerate,
        "commutant_dim": com.dim,
        "irreducibility": com.verdict,
        "centralizer_dims": [lie.centralizer_dimension(L, g) for g in L.generators],
        "nilpotent_element": None if N is None else N.to_json(),
    }
    checks = [("killing_symmetric", rep.killing_gram == rep.killing_gram.T)]
    if N is not None:
        checks.append(("nilpotent_verified", not N.is_zero() and (N ** L.ambient_dim).is_zero()))
    return {"ambient_dim": L.ambient_dim, "generators": obj["generators"]}, result, checks


def cmd_field_zeros(args):
    A = _square(_load(args.input))
    zeros = lie.linear_field_zeros(A)
    eye = QMatrix.identity(A.rows)
    ok = all(all(not any((A - eye * lam) @ v) for v in S.vectors()) for lam, S in zeros)
    result = {"zeros": [{"eigenvalue": _q(lam), "eigenspace": _space(S)} for lam, S in zeros]}
    return {"A": A.to_json()}, result, [("eigenspaces_annihilated", ok)]


COMMANDS = {
    "splitting-type": (cmd_splitting_type, "Grothendieck splitting type of a transition matrix"),
    "birkhoff-factorize": (cmd_birkhoff, "Birkhoff factorization of a transition matrix"),
    "h0": (cmd_h0, "dimension of sections of E(n)"),
    "nilpotent-analyze": (cmd_nilpotent, "kernel/image filtrations and Jordan chains"),
    "orbit-curve": (cmd_orbit, "degree and coefficients of exp(tA)u"),
    "flags-check": (cmd_flags, "complementarity and refinement of two flags"),
    "sl2-complete": (cmd_sl2_complete, "complete a nilpotent to an sl(2)-triple"),
    "sl2-projection": (cmd_sl2_projection, "flags and projection for an sl(2) pair"),
    "clebsch-gordan": (cmd_clebsch_gordan, "decompose U_m ⊗ U_n"),
    "identify-irrep": (cmd_identify, "recognise a twisted irreducible from its weights"),
    "veronese-normal": (cmd_veronese, "normal bundle of the rational normal curve, two ways"),
    "lie-analyze": (cmd_lie, "structure of a matrix Lie algebra"),
    "field-zeros": (cmd_field_zeros, "zeros of the induced vector field on projective space"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"ParseError: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sl2p1", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.add_argument("--input", metavar="FILE")
        sp.add_argument("--json", action="store_true", help="print the report as JSON")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--n", type=int)
        sp.add_argument("--m", type=int)
        if name == "orbit-curve":
            sp.add_argument("--vector", help="comma-separated rationals, e.g. 1,0,-1/2")
        if name == "identify-irrep":
            sp.add_argument("--weights", help="comma-separated integers")
        if name == "birkhoff-factorize":
            sp.add_argument("--order", choices=("plus-minus", "minus-plus"), default="plus-minus")
    return p


def _render_text(report: dict) -> str:
    lines = [f"command: {report['command']}"]

    def emit(key, val, indent):
        pad = "  " * indent
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            for k, v in val.items():
                emit(k, v, indent + 1)
        else:
            lines.append(f"{pad}{key}: {json.dumps(val, ensure_ascii=False)}")

    emit("result", report["result"], 0)
    lines.append("checks:")
    for c in report["checks"]:
        lines.append(f"  [{'pass' if c['pass'] else 'FAIL'}] {c['name']}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fn, _ = COMMANDS[args.command]
    try:
        inputs, result, checks = fn(args)
    except InputError as exc:
        print(f"ParseError: {exc}", file=sys.stderr)
        return 2
    except AlgebraError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (RecursionError, MemoryError, AssertionError, ArithmeticError) as exc:
        print(f"InternalError: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    report = {
        "command": args.command,
        "inputs": inputs,
        "result": result,
        "checks": [{"name": n, "pass": bool(ok)} for n, ok in checks],
    }
    print(json.dumps(report, indent=2, ensure_ascii=False) if args.json else _render_text(report))
    failed = [c["name"] for c in report["checks"] if not c["pass"]]
    if failed:
        print("CheckFailed: " + ", ".join(failed), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
