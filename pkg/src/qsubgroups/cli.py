"""Command-line front end.

Subcommands
    validate-phi    check a twisting-map parameter matrix
    kernel          coefficient matrix and character kernel for (I+, I-)
    datum           validate a datum, report orders and dimensions
    enumerate       stream classification triples with dimensions
    paper-examples  run the built-in golden fixtures
    twist-table     export the dual 2-cocycle exponent table

Problems are described either with inline flags (--type C --rank 3
--ell 11 --family-c3 1,2,0 --iplus 2 --iminus 1 --sigma-gen 2,3,2 ...)
or with --spec FILE pointing at a JSON document carrying the same keys.
Reports are line-delimited JSON with sorted keys, so identical inputs
produce byte-identical output.  Dimensions are rendered in factored form
{"cofactor": c, "base": ell, "exponent": e} because plain integers like
ell^21 overflow naive consumers.

Exit status: 0 success, 1 validation failure, 2 guard or resource
failure, 3 parse failure.  The enumeration guard cap can be set with the
QSUBGROUPS_ENUM_CAP environment variable.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .cocycle import TableCapExceeded, twist_J
from .datum import (
    DualHom,
    FiniteAbelianGroup,
    TorusEmbedding,
    TwistedSubgroupDatum,
    dim_A,
    dim_H,
    enumerate_triples,
    factor_out,
    obstruction_check,
    predicates,
    validate_datum,
)
from .exact import IntMatrix
from .lie import CartanDatum, InvalidCartanMatrix, bilinear_form, cartan_matrix
from .torus import (
    EnumerationGuard,
    SigmaGenerator,
    TorusSubgroup,
    Triple,
    canonical_row_form,
    n_phi_from_sigma,
    omega_order,
    s_phi_matrix,
    sigma_order_identity,
    t_hat_I_complement,
    validate_triple,
)
from .twist import apply_phi, build_twist, c3_parameter_matrix

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_GUARD = 2
EXIT_PARSE = 3


class ParseFailure(Exception):
    pass


class GuardFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseFailure(message)


def _emit(record: dict) -> None:
    sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")


def _factored(value: int, base: int) -> dict:
    cofactor, exponent = factor_out(value, base)
    return {"cofactor": cofactor, "base": base, "exponent": exponent}


def _parse_int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise ParseFailure(f"expected integers, got {text!r}") from exc


@dataclass
class ProblemSpec:
    """Normalized problem description shared by the subcommands."""

    cd: CartanDatum
    ell: int
    Y: object  # IntMatrix or rational rows; validated by build_twist
    iplus: tuple[int, ...]
    iminus: tuple[int, ...]
    sigma_gens: tuple[tuple[int, ...], ...]
    sigma_symbols: tuple[SigmaGenerator, ...]
    datum: dict | None
    inputs: dict  # normalized echo for reports


def _load_spec(args) -> ProblemSpec:
    doc: dict = {}
    if getattr(args, "spec", None):
        try:
            with open(args.spec, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseFailure(f"cannot read spec file: {exc}") from exc
        if not isinstance(doc, dict):
            raise ParseFailure("spec file must hold a JSON object")

    def pick(key, flag_value):
        return flag_value if flag_value is not None else doc.get(key)

    lie_type = pick("type", getattr(args, "type", None))
    rank = pick("rank", getattr(args, "rank", None))
    cartan_rows = pick("cartan", getattr(args, "cartan", None))
    if isinstance(cartan_rows, str):
        try:
            cartan_rows = json.loads(cartan_rows)
        except json.JSONDecodeError as exc:
            raise ParseFailure(f"bad --cartan payload: {exc}") from exc
    ell = pick("ell", getattr(args, "ell", None))
    if ell is None:
        raise ParseFailure("--ell is required")
    ell = int(ell)
    if ell < 3 or ell % 2 == 0:
        raise ParseFailure("--ell must be odd and >= 3")

    if cartan_rows is not None:
        try:
            cd = CartanDatum.from_matrix(IntMatrix(cartan_rows))
        except (InvalidCartanMatrix, ValueError, TypeError) as exc:
            raise ParseFailure(f"bad Cartan matrix: {exc}") from exc
    else:
        if lie_type is None or rank is None:
            raise ParseFailure("need --type and --rank (or an explicit Cartan matrix)")
        try:
            cd = cartan_matrix(str(lie_type), int(rank))
        except (InvalidCartanMatrix, ValueError, TypeError) as exc:
            raise ParseFailure(str(exc)) from exc
    if cd.lie_type == "G" and ell % 3 == 0:
        raise ParseFailure("--ell must be coprime to 3 in type G")

    family = pick("family_c3", getattr(args, "family_c3", None))
    y_rows = pick("y", getattr(args, "y", None))
    if family is not None:
        if isinstance(family, str):
            family = _parse_int_list(family)
        if len(family) != 3:
            raise ParseFailure("--family-c3 needs exactly a,b,c")
        if (cd.lie_type, cd.rank) != ("C", 3):
            raise ParseFailure("--family-c3 only applies to type C rank 3")
        try:
            ymat = c3_parameter_matrix(*family)
        except (ValueError, TypeError) as exc:
            raise ParseFailure(f"bad family parameters: {exc}") from exc
    elif y_rows is not None:
        if isinstance(y_rows, str):
            try:
                y_rows = json.loads(y_rows)
            except json.JSONDecodeError as exc:
                raise ParseFailure(f"bad --y payload: {exc}") from exc
        try:
            ymat = IntMatrix(y_rows)
        except (ValueError, TypeError) as exc:
            raise ParseFailure(f"bad parameter matrix: {exc}") from exc
    else:
        ymat = IntMatrix.zeros(cd.rank, cd.rank)

    iplus = pick("iplus", getattr(args, "iplus", None)) or []
    iminus = pick("iminus", getattr(args, "iminus", None)) or []
    if isinstance(iplus, str):
        iplus = _parse_int_list(iplus)
    if isinstance(iminus, str):
        iminus = _parse_int_list(iminus)

    sigma_gens: list[tuple[int, ...]] = []
    sigma_symbols: list[SigmaGenerator] = []
    raw_gens = list(doc.get("sigma", {}).get("generators", []))
    raw_gens += [_parse_int_list(g) for g in (getattr(args, "sigma_gen", None) or [])]
    for g in raw_gens:
        sigma_gens.append(tuple(int(x) for x in g))
    raw_syms = list(doc.get("sigma", {}).get("symbols", []))
    raw_syms += [s.split(":") for s in (getattr(args, "sigma_sym", None) or [])]
    for sym in raw_syms:
        if len(sym) != 2:
            raise ParseFailure(f"sigma symbol needs kind:value, got {sym!r}")
        kind, value = sym[0], sym[1]
        if kind in ("kbar", "ktilde", "tau"):
            try:
                sigma_symbols.append(SigmaGenerator(kind, index=int(value)))
            except (ValueError, TypeError) as exc:
                raise ParseFailure(f"bad sigma symbol index: {value!r}") from exc
        elif kind == "vector":
            vec = value if isinstance(value, (list, tuple)) else _parse_int_list(value)
            sigma_symbols.append(SigmaGenerator.fixed(vec))
        else:
            raise ParseFailure(f"unknown sigma symbol kind {kind!r}")

    inputs = {
        "type": cd.lie_type,
        "rank": cd.rank,
        "cartan": cd.A.to_lists(),
        "ell": ell,
        "y": ymat.to_lists() if isinstance(ymat, IntMatrix)
        else [[str(x) for x in row] for row in ymat],
        "iplus": sorted(int(i) for i in iplus),
        "iminus": sorted(int(i) for i in iminus),
    }
    if sigma_gens or sigma_symbols:
        # echoed in the same shape a spec file uses, so reports re-parse
        inputs["sigma"] = {}
        if sigma_gens:
            inputs["sigma"]["generators"] = [list(g) for g in sigma_gens]
        if sigma_symbols:
            inputs["sigma"]["symbols"] = [
                [s.kind, s.index if s.index is not None else list(s.vector)]
                for s in sigma_symbols
            ]
    return ProblemSpec(
        cd=cd,
        ell=ell,
        Y=ymat,
        iplus=tuple(sorted(int(i) for i in iplus)),
        iminus=tuple(sorted(int(i) for i in iminus)),
        sigma_gens=tuple(sigma_gens),
        sigma_symbols=tuple(sigma_symbols),
        datum=doc.get("datum"),
        inputs=inputs,
    )


def _require_twist(spec: ProblemSpec):
    result = build_twist(spec.cd, spec.Y)
    if result.twist is None:
        _emit(
            {
                "command": "validate-phi",
                "inputs": spec.inputs,
                "results": {
                    "valid": False,
                    "violations": [
                        {
                            "condition": v.condition,
                            "indices": list(v.indices) if v.indices else None,
                            "detail": v.detail,
                        }
                        for v in result.violations
                    ],
                },
            }
        )
        raise SystemExit(EXIT_INVALID)
    return result.twist


def _build_triple(tw, spec: ProblemSpec) -> Triple:
    return Triple.make(
        tw,
        spec.ell,
        spec.iplus,
        spec.iminus,
        sigma_gens=spec.sigma_gens,
        recipe=spec.sigma_symbols or None,
    )


# ---------------------------------------------------------------------------
# subcommands

def cmd_validate_phi(args) -> int:
    spec = _load_spec(args)
    result = build_twist(spec.cd, spec.Y)
    record = {
        "command": "validate-phi",
        "inputs": spec.inputs,
        "results": {
            "valid": result.ok,
            "violations": [
                {
                    "condition": v.condition,
                    "indices": list(v.indices) if v.indices else None,
                    "detail": v.detail,
                }
                for v in result.violations
            ],
        },
        "citations": [
            "D X antisymmetric",
            "(phi(omega_i), omega_j)/2 integral",
            "A + 2X invertible",
        ],
    }
    if result.ok:
        record["results"]["x"] = result.twist.X.to_lists()
    _emit(record)
    return EXIT_OK if result.ok else EXIT_INVALID


def cmd_kernel(args) -> int:
    spec = _load_spec(args)
    tw = _require_twist(spec)
    s = s_phi_matrix(tw, spec.ell, spec.iplus, spec.iminus)
    kernel = t_hat_I_complement(tw, spec.ell, spec.iplus, spec.iminus)
    record = {
        "command": "kernel",
        "inputs": spec.inputs,
        "results": {
            "matrix": s.to_lists(),
            "matrix_canonical_rows": canonical_row_form(s, spec.ell).to_lists(),
            "kernel_generators": [list(g) for g in kernel.generators],
            "kernel_order": kernel.order,
        },
        "citations": [
            "rows are the exponents of (1 -/+ phi)(alpha_i) for i in I+-",
            "kernel solved over Z/ell via Smith normal form",
        ],
    }
    _emit(record)
    if spec.sigma_gens or spec.sigma_symbols:
        triple = _build_triple(tw, spec)
        report = validate_triple(tw, spec.ell, triple)
        if not report.ok:
            _emit(
                {
                    "command": "kernel",
                    "results": {
                        "triple_valid": False,
                        "missing": [list(m) for m in report.missing],
                    },
                }
            )
            return EXIT_INVALID
        nsub = n_phi_from_sigma(tw, spec.ell, triple)
        sigma_order, n_order, ok = sigma_order_identity(tw, spec.ell, triple)
        _emit(
            {
                "command": "kernel",
                "results": {
                    "triple_valid": True,
                    "sigma_order": sigma_order,
                    "omega_order": omega_order(tw, spec.ell, triple),
                    "n_generators": [list(g) for g in nsub.generators],
                    "n_order": n_order,
                    "order_identity": ok,
                },
                "citations": ["|Sigma| * |N| = ell^n", "|Omega| = |Sigma| / |T_I|"],
            }
        )
    return EXIT_OK


def _parse_datum(tw, spec: ProblemSpec) -> TwistedSubgroupDatum:
    payload = spec.datum or {}
    n = tw.rank
    n_gens = payload.get("n_generators")
    recipe = None
    if n_gens is None:
        if spec.sigma_gens or spec.sigma_symbols:
            triple = _build_triple(tw, spec)
            nsub = n_phi_from_sigma(tw, spec.ell, triple)
            recipe = triple.recipe
        else:
            nsub = TorusSubgroup.trivial(spec.ell, n)
    else:
        nsub = TorusSubgroup.from_generators(
            spec.ell, n, [tuple(int(x) for x in g) for g in n_gens]
        )
    gamma = payload.get("gamma")
    if gamma:
        group = FiniteAbelianGroup(tuple(gamma.get("factors", ())))
        embedding = TorusEmbedding.make(group, gamma["embedding"], n)
    else:
        embedding = TorusEmbedding.trivial(n)
    delta_rows = payload.get("delta")
    if delta_rows is None:
        delta = DualHom.trivial(nsub, embedding.group)
    else:
        delta = DualHom.make(nsub, embedding.group, delta_rows)
    return TwistedSubgroupDatum.make(
        spec.iplus,
        spec.iminus,
        nsub,
        embedding=embedding,
        delta=delta,
        sigma_recipe=recipe,
    )


def cmd_datum(args) -> int:
    spec = _load_spec(args)
    tw = _require_twist(spec)
    d = _parse_datum(tw, spec)
    report = validate_datum(tw, spec.ell, d)
    record = {
        "command": "datum",
        "inputs": spec.inputs,
        "results": {
            "valid": report.ok,
            "violations": [
                {"condition": v.condition, "detail": v.detail}
                for v in report.violations
            ],
        },
    }
    if not report.ok:
        _emit(record)
        return EXIT_INVALID
    h = dim_H(tw, spec.ell, d.iplus, d.iminus, d.N)
    a = dim_A(tw, spec.ell, d)
    preds = predicates(tw, spec.ell, d)
    cofactor, exponent = h.factored()
    simple_cof, simple_exp = factor_out(h.value_simple_convention, spec.ell)
    record["results"].update(
        {
            "n_generators": [list(g) for g in d.N.generators],
            "n_order": d.N.order,
            "sigma_order": h.sigma_order,
            "dim_h": {"cofactor": cofactor, "base": spec.ell, "exponent": exponent},
            "dim_h_simple_convention": {
                "cofactor": simple_cof,
                "base": spec.ell,
                "exponent": simple_exp,
            },
            "gamma_order": (
                d.gamma_order if isinstance(d.gamma_order, int) else "INFINITE"
            ),
            "dim_a": (_factored(a, spec.ell) if isinstance(a, int) else "INFINITE"),
            "predicates": {
                "pointed_necessary": preds.pointed_necessary,
                "semisimple": preds.semisimple,
                "dual_pointed_consistent": preds.dual_pointed_consistent,
                "cocycle_deformation_obstructed": preds.cocycle_deformation_obstructed,
            },
        }
    )
    if preds.obstruction is not None:
        ob = preds.obstruction
        record["results"]["untwisted_comparison"] = {
            "sigma_order_twisted": ob.sigma_order_twisted,
            "n_order_twisted": ob.n_order_twisted,
            "sigma_order_untwisted": ob.sigma_order_untwisted,
            "n_order_untwisted": ob.n_order_untwisted,
            "dim_ratio": str(ob.dim_ratio),
        }
    record["citations"] = [
        "|Sigma| = ell^n / |N|",
        "dim H = |Sigma| * ell^(#supported positive roots)",
        "dim H (simple-index convention) = |Sigma| * ell^(|I+| + |I-|)",
        "dim A = |Gamma| * dim H",
    ]
    _emit(record)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    spec = _load_spec(args)
    tw = _require_twist(spec)
    fixed = None
    if spec.iplus or spec.iminus:
        fixed = (spec.iplus, spec.iminus)
    try:
        records = enumerate_triples(
            tw, spec.ell, max_results=args.max_results, fixed_pair=fixed
        )
    except EnumerationGuard as exc:
        _emit({"command": "enumerate", "error": str(exc)})
        return EXIT_GUARD
    for rec in records:
        cofactor, exponent = rec.dims.factored()
        _emit(
            {
                "command": "enumerate",
                "triple": {
                    "iplus": list(rec.iplus),
                    "iminus": list(rec.iminus),
                    "n_generators": [list(g) for g in rec.N.generators],
                    "n_order": rec.N.order,
                    "sigma_order": rec.dims.sigma_order,
                    "dim_h": {
                        "cofactor": cofactor,
                        "base": spec.ell,
                        "exponent": exponent,
                    },
                },
            }
        )
    _emit({"command": "enumerate", "total": len(records)})
    return EXIT_OK


def cmd_twist_table(args) -> int:
    spec = _load_spec(args)
    tw = _require_twist(spec)
    cocycle = twist_J(tw, spec.ell)
    try:
        lines = list(cocycle.table_lines(cap=args.cap))
    except TableCapExceeded as exc:
        _emit({"command": "twist-table", "error": str(exc)})
        return EXIT_GUARD
    _emit(
        {
            "command": "twist-table",
            "inputs": spec.inputs,
            "results": {"rows": len(lines), "entries_mod": spec.ell},
            "citations": ["exponent rule (phi(l_z1), l_z2)/2 mod ell"],
        }
    )
    for line in lines:
        sys.stdout.write(line + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# golden fixtures

def _paper_fixtures(a: int, b: int, c: int, ell: int):
    """The worked type-C rank-3 computations used as golden checks."""
    cd = cartan_matrix("C", 3)
    checks = []

    def check(name, expected, actual):
        checks.append((name, expected, actual, expected == actual))

    check(
        "cartan_matrix_c3",
        [[2, -1, 0], [-1, 2, -1], [0, -2, 2]],
        cd.A.to_lists(),
    )
    check("symmetrizers_c3", [2, 2, 1], list(cd.d))
    check(
        "weight_root_pairing",
        [[cd.d[i - 1] if i == j else 0 for j in (1, 2, 3)] for i in (1, 2, 3)],
        [
            [
                int(bilinear_form(cd.fundamental_weight(i), cd.simple_root(j), cd))
                for j in (1, 2, 3)
            ]
            for i in (1, 2, 3)
        ],
    )
    check(
        "root_root_pairing",
        [[cd.d[i - 1] * cd.A[i - 1, j - 1] for j in (1, 2, 3)] for i in (1, 2, 3)],
        [
            [
                int(bilinear_form(cd.simple_root(i), cd.simple_root(j), cd))
                for j in (1, 2, 3)
            ]
            for i in (1, 2, 3)
        ],
    )
    result = build_twist(cd, c3_parameter_matrix(a, b, c))
    check("twist_valid", True, result.ok)
    if not result.ok:
        return checks
    tw = result.twist
    for i, expected in ((1, [4, 8, 10]), (2, [-2, -2, -2]), (3, [-2, -2, -2])):
        image = apply_phi(tw, cd.simple_root(i))
        check(f"phi_alpha_{i}", expected, [int(x) for x in image.coords])

    iplus, iminus = (2,), (1,)
    s = s_phi_matrix(tw, ell, iplus, iminus)
    check("s_matrix_rows", sorted([[5, 8, 10], [2, 3, 2]]), sorted(s.to_lists()))
    check(
        "s_matrix_canonical",
        [[1, 0, 8], [0, 1, 10]],
        canonical_row_form(s, ell).to_lists(),
    )
    kernel = t_hat_I_complement(tw, ell, iplus, iminus)
    check("kernel_a_order", 11, kernel.order)
    check("kernel_a_contains_311", True, kernel.contains((3, 1, 1)))
    check(
        "kernel_a_equals_span_311",
        TorusSubgroup.from_generators(ell, 3, [(3, 1, 1)]).lattice.to_lists(),
        kernel.lattice.to_lists(),
    )

    recipe_a = (
        SigmaGenerator.kbar(2),
        SigmaGenerator.ktilde(1),
        SigmaGenerator.tau(3),
        SigmaGenerator.tau(2),
    )
    triple_a = Triple.make(tw, ell, iplus, iminus, recipe=recipe_a)
    check("sigma_a_is_full_torus", ell**3, triple_a.sigma.order)
    n_a = n_phi_from_sigma(tw, ell, triple_a)
    check("n_a_trivial", 1, n_a.order)
    check("order_identity_a", (ell**3, 1, True), sigma_order_identity(tw, ell, triple_a))

    recipe_b = (SigmaGenerator.ktilde(1), SigmaGenerator.kbar(2))
    triple_b = Triple.make(tw, ell, (2,), (), recipe=recipe_b)
    kernel_b = t_hat_I_complement(tw, ell, (2,), ())
    check("kernel_b_order", 121, kernel_b.order)
    check(
        "kernel_b_contains",
        [True, True],
        [kernel_b.contains((1, 0, 10)), kernel_b.contains((0, 1, 4))],
    )
    n_b = n_phi_from_sigma(tw, ell, triple_b)
    check("n_b_order", 11, n_b.order)
    check("n_b_contains_311", True, n_b.contains((3, 1, 1)))
    check("sigma_b_order", 121, triple_b.sigma.order)
    check("order_identity_b", (121, 11, True), sigma_order_identity(tw, ell, triple_b))

    datum_b = TwistedSubgroupDatum.make((2,), (), n_b)
    check("datum_b_valid", True, validate_datum(tw, ell, datum_b).ok)
    h_b = dim_H(tw, ell, (2,), (), n_b)
    check("datum_b_dimension", (1, 3), h_b.factored())

    z2 = FiniteAbelianGroup((2,))
    semisimple_datum = TwistedSubgroupDatum.make(
        (), (), TorusSubgroup.trivial(ell, 3),
        embedding=TorusEmbedding.make(z2, [[1], [0], [0]], 3),
    )
    check(
        "semisimple_predicate",
        True,
        predicates(tw, ell, semisimple_datum).semisimple,
    )

    ob = obstruction_check(tw, ell, iplus, iminus, recipe_a)
    check(
        "untwisted_comparison_orders",
        (121, 11),
        (ob.sigma_order_untwisted, ob.n_order_untwisted),
    )
    check("obstruction_flag", True, ob.obstructed)
    check("obstruction_dim_ratio", Fraction(11), ob.dim_ratio)

    h_full = dim_H(tw, ell, (1, 2, 3), (1, 2, 3), TorusSubgroup.trivial(ell, 3))
    check("dim_full_kernel", (1, 21), h_full.factored())
    return checks


def cmd_paper_examples(args) -> int:
    ell = args.ell if args.ell is not None else 11
    family = (
        _parse_int_list(args.family_c3) if args.family_c3 is not None else [1, 2, 0]
    )
    if len(family) != 3:
        raise ParseFailure("--family-c3 needs exactly a,b,c")
    if ell != 11:
        _emit(
            {
                "command": "paper-examples",
                "error": f"fixtures are pinned to level 11, got {ell}",
            }
        )
        return EXIT_GUARD
    checks = _paper_fixtures(*family, ell)
    failures = 0
    for name, expected, actual, ok in checks:
        _emit(
            {
                "command": "paper-examples",
                "fixture": name,
                "pass": ok,
                "expected": _jsonable(expected),
                "computed": _jsonable(actual),
            }
        )
        failures += 0 if ok else 1
    _emit(
        {
            "command": "paper-examples",
            "total": len(checks),
            "failed": failures,
        }
    )
    return EXIT_OK if failures == 0 else EXIT_INVALID


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    if isinstance(value, list):
        return [_jsonable(v) for v in value]
    return value


# ---------------------------------------------------------------------------
# argument wiring

def _add_problem_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--spec", help="path to a JSON problem description")
    p.add_argument("--type", "-t", help="Lie type A..G")
    p.add_argument("--rank", type=int, help="rank n")
    p.add_argument("--cartan", help="JSON rows of an explicit Cartan matrix")
    p.add_argument("--ell", type=int, help="odd level ell >= 3")
    p.add_argument("--y", help="JSON rows of the parameter matrix Y")
    p.add_argument(
        "--family-c3",
        dest="family_c3",
        help="a,b,c parameters of the built-in type C rank 3 family",
    )
    p.add_argument("--iplus", help="comma-separated simple indices of I+")
    p.add_argument("--iminus", help="comma-separated simple indices of I-")
    p.add_argument(
        "--sigma-gen",
        action="append",
        dest="sigma_gen",
        help="a Sigma generator as comma-separated exponents (repeatable)",
    )
    p.add_argument(
        "--sigma-sym",
        action="append",
        dest="sigma_sym",
        help="a symbolic Sigma generator kind:index, kind in kbar/ktilde/tau",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="qsubgroups",
        description="exact quantum-subgroup data for twisted quantum groups "
        "at odd roots of unity",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("validate-phi", help="validate a twisting map")
    _add_problem_flags(p)
    p.set_defaults(func=cmd_validate_phi)

    p = sub.add_parser("kernel", help="character kernel for (I+, I-)")
    _add_problem_flags(p)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("datum", help="validate and measure a subgroup datum")
    _add_problem_flags(p)
    p.set_defaults(func=cmd_datum)

    p = sub.add_parser("enumerate", help="enumerate classification triples")
    _add_problem_flags(p)
    p.add_argument("--max-results", type=int, default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("twist-table", help="export the 2-cocycle exponent table")
    _add_problem_flags(p)
    p.add_argument("--cap", type=int, default=None, help="table size guard")
    p.set_defaults(func=cmd_twist_table)

    p = sub.add_parser("paper-examples", help="run the golden fixtures")
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--family-c3", dest="family_c3", default=None)
    p.set_defaults(func=cmd_paper_examples)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ParseFailure as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except (EnumerationGuard, TableCapExceeded, GuardFailure) as exc:
        sys.stderr.write(f"guard: {exc}\n")
        return EXIT_GUARD
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_PARSE
    except (ValueError, InvalidCartanMatrix) as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
