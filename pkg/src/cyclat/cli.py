"""Command line front end for the workbench.

Four command groups:

    ring-identities        prime decomposition identities in Z[x]/(x^p - 1)
    module   ACTION SPEC   finite-module construction and invariant bases
    inclusion ACTION SPEC  twisted-kernel conditions for a submodule pair
    graph    ACTION        gadget graphs, K groups, group-graph verification

Every command accepts the shared flags --p, --depth, --seed, --kmax and
--format.  With --format structured the output is a single JSON document,
byte-identical across runs with the same invocation and seed.

Exit codes: 0 success (and checked property true), 1 checked property
false, 64 usage or parse error, 65 bad mathematical input, 2 internal
invariant failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Optional, Sequence

from .cyclo_ring import (
    check_twist_power_identity,
    decompose_prime,
    is_prime,
)
from .errors import (
    InternalInvariantError,
    ParseError,
    PreconditionError,
)
from .graphkit import (
    GadgetGraph,
    GroupGraphSpec,
    build_group_graph,
    build_strand_graph,
    is_irreducible,
    to_dot,
    validate_automorphism,
)
from .intlinalg import IntMatrix, Lattice, QuotientInvariants, kernel_basis
from .ktheory import compute_k, induced_action, stabilization_check, verify_group_graph
from .lattice_props import (
    InclusionPair,
    check_t_condition,
    check_t_intersection,
    find_impurity_witness,
    inclusion_diagram,
)
from .presentation import build_aug, find_invariant_basis
from .zmod import FinMod, Submodule, build, parse_modspec

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_INTERNAL = 2


@dataclasses.dataclass(frozen=True)
class WorkbenchConfig:
    """Validated shared options for one invocation."""

    p: int = 2
    depth: int = 3
    seed: int = 0
    kmax: int = 4
    fmt: str = "text"

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ParseError(f"--p must be prime, got {self.p}")
        if self.depth < 2:
            raise ParseError(f"--depth must be at least 2, got {self.depth}")
        if self.kmax < 0:
            raise ParseError(f"--kmax must be nonnegative, got {self.kmax}")
        if self.fmt not in ("text", "structured"):
            raise ParseError(f"unknown format {self.fmt!r}")


class Report:
    """Collects one command's output in both text and structured form."""

    def __init__(self, command: str) -> None:
        self.lines: list[str] = []
        self.data: dict = {"command": command}

    def say(self, line: str) -> None:
        self.lines.append(line)

    def put(self, key: str, value) -> None:
        self.data[key] = value

    def emit(self, cfg: WorkbenchConfig) -> None:
        if cfg.fmt == "structured":
            sys.stdout.write(json.dumps(self.data, sort_keys=True, indent=2) + "\n")
        else:
            for line in self.lines:
                sys.stdout.write(line + "\n")


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage problems as ParseError."""

    def error(self, message: str) -> None:
        raise ParseError(message)


def _poly_text(elt) -> str:
    """Render a ring element as a plain polynomial in x, low degree first."""
    terms = []
    for i, c in enumerate(elt.coeffs):
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            xi = "x" if i == 1 else f"x^{i}"
            if c == 1:
                terms.append(xi)
            elif c == -1:
                terms.append(f"-{xi}")
            else:
                terms.append(f"{c}*{xi}")
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


def _read_spec_arg(raw: str) -> str:
    """A SPEC argument starting with @ names a file holding the spec text."""
    if raw.startswith("@"):
        try:
            with open(raw[1:], "r", encoding="utf-8") as fh:
                return fh.read().strip()
        except OSError as exc:
            raise ParseError(f"cannot read spec file {raw[1:]}: {exc}")
    return raw


def _vec_text(v: Sequence[int]) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _invariants_json(inv: QuotientInvariants) -> dict:
    return {"torsion": list(inv.torsion), "free_rank": inv.free_rank}


def _matrix_json(m: IntMatrix) -> list:
    return [list(row) for row in m.entries()]


# ---------------------------------------------------------------------------
# ring-identities


def cmd_ring_identities(cfg: WorkbenchConfig, args) -> int:
    ids = decompose_prime(cfg.p)
    rep = Report("ring-identities")
    rep.say(f"p = {cfg.p}")
    rep.say(f"core: {_poly_text(ids.core)}")
    rep.say(f"core at 1: {sum(ids.core.coeffs)}")
    rep.say(f"twist_coeff: {_poly_text(ids.twist_coeff)}")
    rep.say(f"norm_coeff: {_poly_text(ids.norm_coeff)}")
    ok = all(check_twist_power_identity(cfg.p, k) for k in range(1, cfg.kmax + 1))
    rep.say(f"power identities up to k = {cfg.kmax}: {'ok' if ok else 'FAILED'}")
    rep.put("p", cfg.p)
    rep.put("core", list(ids.core.coeffs))
    rep.put("core_at_1", sum(ids.core.coeffs))
    rep.put("twist_coeff", list(ids.twist_coeff.coeffs))
    rep.put("norm_coeff", list(ids.norm_coeff.coeffs))
    rep.put("substitution_steps", len(ids.steps))
    rep.put("power_identities_ok", ok)
    rep.emit(cfg)
    return EXIT_OK if ok else EXIT_FALSE


# ---------------------------------------------------------------------------
# module


def _build_module(cfg: WorkbenchConfig, raw_spec: str) -> FinMod:
    text = _read_spec_arg(raw_spec)
    shape = parse_modspec(text)
    return build(shape, cfg.p)


def _orbit_summary(m: FinMod) -> tuple[int, int]:
    free = sum(1 for orb in m.orbits() if len(orb) > 1)
    fixed = sum(1 for orb in m.orbits() if len(orb) == 1)
    return free, fixed


def cmd_module(cfg: WorkbenchConfig, args) -> int:
    m = _build_module(cfg, args.spec)
    rep = Report(f"module-{args.action}")
    rep.put("p", cfg.p)
    rep.put("spec", _read_spec_arg(args.spec))

    if args.action == "build":
        inv = m.invariants()
        free, fixed = _orbit_summary(m)
        rep.say(f"module: {_read_spec_arg(args.spec)} over p = {cfg.p}")
        rep.say(f"structure: {m.describe()}")
        rep.say(f"order: {m.order()}")
        rep.say(f"element orbits: {free} free, {fixed} fixed")
        rep.put("structure", m.describe())
        rep.put("order", m.order())
        rep.put("invariants", _invariants_json(inv))
        rep.put("orbits_free", free)
        rep.put("orbits_fixed", fixed)
        rep.emit(cfg)
        return EXIT_OK

    pres = build_aug(m)
    eq = pres.kernel_pair()

    if args.action == "present":
        rep.say(f"presentation of {_read_spec_arg(args.spec)} over p = {cfg.p}")
        rep.say(f"elements: {pres.size}")
        rep.say(f"kernel rank: {eq.rank}")
        rep.say(f"noncyclotomic: {str(eq.is_noncyclotomic()).lower()}")
        rep.put("elements", pres.size)
        rep.put("kernel_rank", eq.rank)
        rep.put("noncyclotomic", eq.is_noncyclotomic())
        rep.emit(cfg)
        return EXIT_OK

    if args.action == "invariant-basis":
        k, basis = find_invariant_basis(
            eq, allow_stabilization=True, k_max=cfg.kmax, seed=cfg.seed
        )
        rep.say(f"invariant basis for {_read_spec_arg(args.spec)} over p = {cfg.p}")
        rep.say(f"stabilization steps: {k}")
        rep.say(f"rank: {basis.rank}")
        rep.say(f"summary: {basis.summary()}")
        for i, block in enumerate(basis.orbit_blocks):
            for j, vec in enumerate(block):
                rep.say(f"orbit[{i}][{j}]: {_vec_text(vec)}")
        for i, vec in enumerate(basis.fixed_vectors):
            rep.say(f"fixed[{i}]: {_vec_text(vec)}")
        rep.put("stabilization_steps", k)
        rep.put("rank", basis.rank)
        rep.put("summary", basis.summary())
        rep.put("orbit_blocks", [[list(v) for v in b] for b in basis.orbit_blocks])
        rep.put("fixed_vectors", [list(v) for v in basis.fixed_vectors])
        rep.emit(cfg)
        return EXIT_OK

    if args.action == "check-noncyc":
        ok = eq.is_noncyclotomic()
        rep.say(f"noncyclotomic: {str(ok).lower()}")
        rep.put("noncyclotomic", ok)
        if not ok:
            coords, ambient = _noncyc_witness(eq)
            rep.say(f"witness in norm kernel outside twist image: {_vec_text(coords)}")
            rep.say(f"witness in ambient coordinates: {_vec_text(ambient)}")
            rep.put("witness_coords", list(coords))
            rep.put("witness_ambient", list(ambient))
        rep.emit(cfg)
        return EXIT_OK if ok else EXIT_FALSE

    raise ParseError(f"unknown module action {args.action!r}")


def _noncyc_witness(eq) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """A norm-kernel basis vector missing from the twist image.

    Exists whenever is_noncyclotomic() is false: the twist image always
    sits inside the norm kernel, so a strict mismatch leaves some basis
    vector of the kernel outside.
    """
    c = eq.restricted()
    r = c.rows
    norm = IntMatrix.identity(r)
    acc = IntMatrix.identity(r)
    for _ in range(eq.p - 1):
        acc = c @ acc
        norm = norm + acc
    twist = Lattice(r, c - IntMatrix.identity(r))
    ker = kernel_basis(norm)
    for j in range(ker.basis.cols):
        v = ker.basis.col(j)
        if not twist.member(v):
            return v, eq.lattice.basis.apply(v)
    raise InternalInvariantError("noncyclotomic check failed without a witness")


# ---------------------------------------------------------------------------
# inclusion


def _parse_gens(raw: str, width: int) -> list[tuple[int, ...]]:
    vectors = []
    for part in raw.split(";"):
        part = part.strip()
        if not part:
            continue
        try:
            vec = tuple(int(x) for x in part.split(","))
        except ValueError:
            raise ParseError(f"bad generator vector {part!r}")
        if len(vec) != width:
            raise ParseError(
                f"generator vector {part!r} has length {len(vec)}, expected {width}"
            )
        vectors.append(vec)
    if not vectors:
        raise ParseError("--gens needs at least one vector")
    return vectors


def _build_pair(cfg: WorkbenchConfig, args) -> InclusionPair:
    m = _build_module(cfg, args.spec)
    if args.sub == "t":
        span = m.t_image()
    elif args.sub == "full":
        span = Lattice.full(m.r)
    elif args.sub == "zero":
        span = m.rel
    elif args.sub == "gens":
        if not args.gens:
            raise ParseError("--sub gens requires --gens")
        span = m.submodule_generated(_parse_gens(args.gens, m.r))
    else:
        raise ParseError(f"unknown submodule selector {args.sub!r}")
    if isinstance(span, Lattice):
        sub = m.submodule_from_lattice(span)
    else:
        sub = span
    return InclusionPair(m, sub)


def cmd_inclusion(cfg: WorkbenchConfig, args) -> int:
    pair = _build_pair(cfg, args)
    rep = Report(f"inclusion-{args.action}")
    rep.put("p", cfg.p)
    rep.put("spec", _read_spec_arg(args.spec))
    rep.put("sub", args.sub)
    rep.say(f"module: {_read_spec_arg(args.spec)} over p = {cfg.p}")
    rep.say(f"submodule: {args.sub} (index {pair.sub.module.order()} of {pair.M.order()})")

    if args.action == "check":
        inter = check_t_intersection(pair)
        cond = check_t_condition(pair)
        rep.say(f"kernel intersection identity: {str(bool(inter)).lower()}")
        rep.say(f"twist condition: {str(cond).lower()}")
        rep.put("kernel_intersection", bool(inter))
        rep.put("twist_condition", cond)
        if not cond:
            verdict = find_impurity_witness(pair)
            if verdict is not None:
                rep.say(f"impurity witness xi: {_vec_text(verdict.xi)}")
                rep.say(f"impurity witness lam: {_poly_text(verdict.lam)}")
                rep.put("witness_xi", list(verdict.xi))
                rep.put("witness_lam", list(verdict.lam.coeffs))
        rep.emit(cfg)
        return EXIT_OK if cond else EXIT_FALSE

    if args.action == "witness":
        verdict = find_impurity_witness(pair)
        if verdict is None:
            rep.say("twist condition: true")
            rep.say("no impurity witness exists")
            rep.put("twist_condition", True)
            rep.put("witness", None)
            rep.emit(cfg)
            return EXIT_OK
        rep.say("twist condition: false")
        rep.say(f"impurity witness xi: {_vec_text(verdict.xi)}")
        rep.say(f"impurity witness lam: {_poly_text(verdict.lam)}")
        rep.put("twist_condition", False)
        rep.put("witness", {"xi": list(verdict.xi), "lam": list(verdict.lam.coeffs)})
        rep.emit(cfg)
        return EXIT_FALSE

    if args.action == "diagram":
        report = inclusion_diagram(pair, k_max=cfg.kmax, seed=cfg.seed)
        rep.put("twist_condition", report.condition_holds)
        if not report.condition_holds:
            rep.say("twist condition: false, no commuting inclusion diagram")
            if report.impurity is not None:
                rep.say(f"impurity witness xi: {_vec_text(report.impurity.xi)}")
                rep.say(f"impurity witness lam: {_poly_text(report.impurity.lam)}")
                rep.put(
                    "witness",
                    {
                        "xi": list(report.impurity.xi),
                        "lam": list(report.impurity.lam.coeffs),
                    },
                )
            rep.emit(cfg)
            return EXIT_FALSE
        diagram = report.diagram
        rep.say("twist condition: true")
        rep.say(
            f"stabilization steps: sub {diagram.row0.k}, module {diagram.row.k}"
        )
        rep.say(
            "column map: "
            f"{diagram.column_map.rows} x {diagram.column_map.cols} equivariant"
        )
        rep.say("kernel projection verified")
        rep.put(
            "stabilization_steps", {"sub": diagram.row0.k, "module": diagram.row.k}
        )
        rep.put("column_map", _matrix_json(diagram.column_map))
        rep.put("kernel_projection", _matrix_json(diagram.kernel_projection))
        rep.emit(cfg)
        return EXIT_OK

    raise ParseError(f"unknown inclusion action {args.action!r}")


# ---------------------------------------------------------------------------
# graph


def _group_spec_from_json(data: dict) -> GroupGraphSpec:
    try:
        p = int(data["p"])
        group = data["group"]
        rank = int(group["rank"])
        rel_vectors = [tuple(int(x) for x in v) for v in group.get("rel", [])]
        aut_rows = [[int(x) for x in row] for row in group["aut"]]
        orbits = tuple(tuple(str(a) for a in orb) for orb in data["orbits"])
        pi0_map = data["pi0"]
        bvecs = tuple(tuple(int(x) for x in v) for v in data.get("B", []))
        labels = tuple(a for orb in orbits for a in orb)
        pi0 = tuple((a, tuple(int(x) for x in pi0_map[a])) for a in labels)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad group graph description: {exc!r}")
    if rel_vectors:
        rel = Lattice.spanned_by(rel_vectors, rank)
    else:
        rel = Lattice(rank)
    return GroupGraphSpec(
        p=p,
        group_rank=rank,
        group_rel=rel,
        group_aut=IntMatrix(aut_rows),
        orbits=orbits,
        pi0=pi0,
        bvecs=bvecs,
    )


def _load_graph(cfg: WorkbenchConfig, args) -> tuple[GadgetGraph, Optional[GroupGraphSpec]]:
    if args.strand is not None and args.file is not None:
        raise ParseError("give either --strand or --file, not both")
    if args.strand is not None:
        return build_strand_graph(args.strand, cyclic=args.cyclic), None
    if args.file is None:
        raise ParseError("graph commands need --strand M or --file PATH")
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {args.file}: {exc}")
    except json.JSONDecodeError as exc:
        raise ParseError(f"{args.file} is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise ParseError("graph description must be a JSON object")
    kind = data.get("kind")
    if kind == "strand":
        try:
            m = int(data["m"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad strand description: {exc!r}")
        return build_strand_graph(m, cyclic=bool(data.get("cyclic", False))), None
    if kind == "group":
        spec = _group_spec_from_json(data)
        return build_group_graph(spec), spec
    raise ParseError(f"unknown graph kind {kind!r}")


def _describe_k(kr) -> str:
    k1 = QuotientInvariants((), kr.k1_rank)
    return f"K = ({kr.invariants.describe()}, {k1.describe()})"


def cmd_graph(cfg: WorkbenchConfig, args) -> int:
    graph, spec = _load_graph(cfg, args)
    rep = Report(f"graph-{args.action}")

    if args.action == "build":
        aut = validate_automorphism(graph)
        rep.say(
            f"graph: {len(graph.vertices)} core vertices, "
            f"{len(graph.rays)} ray families"
        )
        rep.say(f"core: {', '.join(graph.vertices)}")
        rep.say(f"emitter: {graph.emitter if graph.emitter else 'none'}")
        for fam in graph.rays:
            rep.say(f"ray {fam.name}: {fam.orientation} at {fam.base}")
        rep.say(f"automorphism order: {aut.order}")
        rep.say(f"irreducible: {str(is_irreducible(graph)).lower()}")
        rep.put("core_vertices", list(graph.vertices))
        rep.put("emitter", graph.emitter)
        rep.put(
            "rays",
            [
                {"name": f.name, "base": f.base, "orientation": f.orientation}
                for f in graph.rays
            ],
        )
        rep.put("automorphism_order", aut.order)
        rep.put("irreducible", is_irreducible(graph))
        rep.emit(cfg)
        return EXIT_OK

    if args.action == "ktheory":
        kr = compute_k(graph, cfg.depth)
        kr = induced_action(graph, kr)
        rep.say(f"depth: {cfg.depth}")
        rep.say(_describe_k(kr))
        rep.say(f"K0 invariant factors: {kr.invariants.describe()}")
        rep.say(f"K1 rank: {kr.k1_rank}")
        for name in graph.vertices:
            rep.say(f"class[{name}] = {_vec_text(kr.vertex_classes[name])}")
        rep.put("depth", cfg.depth)
        rep.put("k0", _invariants_json(kr.invariants))
        rep.put("k1_rank", kr.k1_rank)
        rep.put(
            "vertex_classes",
            {name: list(kr.vertex_classes[name]) for name in graph.vertices},
        )
        rep.put("induced_k0", _matrix_json(kr.induced_k0))
        rep.put("induced_k1", _matrix_json(kr.induced_k1))
        rep.emit(cfg)
        return EXIT_OK

    if args.action == "verify":
        if spec is None:
            raise ParseError("graph verify needs a group graph file (--file)")
        result = verify_group_graph(graph, spec, depth=cfg.depth)
        kr = compute_k(graph, cfg.depth)
        k1 = QuotientInvariants((), kr.k1_rank)
        map_ok = result.check("k0-explicit-isomorphism").passed
        rep.say(
            f"K0 = {kr.invariants.describe()}, K1 = {k1.describe()}, "
            f"map {'OK' if map_ok else 'FAIL'}"
        )
        for chk in result.checks:
            status = "PASS" if chk.passed else "FAIL"
            rep.say(f"check {status} {chk.name}: {chk.detail}")
        rep.say(f"verified: {str(result.passed).lower()}")
        rep.put("k0", _invariants_json(kr.invariants))
        rep.put("k1_rank", kr.k1_rank)
        rep.put(
            "checks",
            [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in result.checks
            ],
        )
        rep.put("verified", result.passed)
        rep.emit(cfg)
        return EXIT_OK if result.passed else EXIT_FALSE

    if args.action == "stability":
        depths = tuple(range(2, max(cfg.depth, 3) + 1))
        tr = stabilization_check(graph, depths)
        rep.say(f"depths: {', '.join(str(d) for d in tr.depths)}")
        for d, inv, k1 in zip(tr.depths, tr.invariants, tr.k1_ranks):
            rep.say(f"depth {d}: K0 {inv.describe()}, K1 rank {k1}")
        rep.say(f"stable: {str(tr.stable).lower()}")
        rep.put("depths", list(tr.depths))
        rep.put("k0_by_depth", [_invariants_json(i) for i in tr.invariants])
        rep.put("k1_ranks", list(tr.k1_ranks))
        rep.put("stable", tr.stable)
        rep.emit(cfg)
        return EXIT_OK if tr.stable else EXIT_FALSE

    if args.action == "dot":
        text = to_dot(graph, cfg.depth)
        if cfg.fmt == "structured":
            rep.put("depth", cfg.depth)
            rep.put("dot", text)
            rep.emit(cfg)
        else:
            sys.stdout.write(text)
        return EXIT_OK

    raise ParseError(f"unknown graph action {args.action!r}")


# ---------------------------------------------------------------------------
# entry point


def _build_parser() -> _Parser:
    parser = _Parser(prog="cyclat", description=__doc__ and __doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2, help="odd or even prime (default 2)")
    common.add_argument("--depth", type=int, default=3, help="window depth (default 3)")
    common.add_argument("--seed", type=int, default=0, help="search seed (default 0)")
    common.add_argument("--kmax", type=int, default=4, help="stabilization cap (default 4)")
    common.add_argument(
        "--format",
        dest="fmt",
        choices=("text", "structured"),
        default="text",
        help="output format (default text)",
    )

    sub = parser.add_subparsers(dest="group", required=True)

    sub.add_parser(
        "ring-identities",
        parents=[common],
        help="prime decomposition identities for p",
    )

    p_mod = sub.add_parser("module", parents=[common], help="finite module commands")
    p_mod.add_argument(
        "action", choices=("build", "present", "invariant-basis", "check-noncyc")
    )
    p_mod.add_argument("spec", help="module spec text, or @FILE")

    p_inc = sub.add_parser("inclusion", parents=[common], help="submodule pair commands")
    p_inc.add_argument("action", choices=("check", "witness", "diagram"))
    p_inc.add_argument("spec", help="module spec text, or @FILE")
    p_inc.add_argument(
        "--sub",
        choices=("t", "full", "zero", "gens"),
        default="t",
        help="submodule selector (default t, the twist image)",
    )
    p_inc.add_argument(
        "--gens",
        help="generators for --sub gens, semicolon separated vectors like 2,0;0,1",
    )

    p_gr = sub.add_parser("graph", parents=[common], help="gadget graph commands")
    p_gr.add_argument(
        "action", choices=("build", "ktheory", "verify", "stability", "dot")
    )
    p_gr.add_argument("--file", help="JSON graph description")
    p_gr.add_argument("--strand", type=int, help="strand count for a strand graph")
    p_gr.add_argument(
        "--cyclic", action="store_true", help="rotate the strands cyclically"
    )

    return parser


_HANDLERS = {
    "ring-identities": cmd_ring_identities,
    "module": cmd_module,
    "inclusion": cmd_inclusion,
    "graph": cmd_graph,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        parser = _build_parser()
        args = parser.parse_args(argv)
        cfg = WorkbenchConfig(
            p=args.p, depth=args.depth, seed=args.seed, kmax=args.kmax, fmt=args.fmt
        )
        return _HANDLERS[args.group](cfg, args)
    except ParseError as exc:
        sys.stderr.write(f"cyclat: usage error: {exc}\n")
        return EXIT_USAGE
    except PreconditionError as exc:
        sys.stderr.write(f"cyclat: bad input: {exc}\n")
        return EXIT_DATA
    except InternalInvariantError as exc:
        sys.stderr.write(f"cyclat: internal invariant failed: {exc}\n")
        return EXIT_INTERNAL
    except Exception as exc:  # pragma: no cover - defensive catch-all
        sys.stderr.write(f"cyclat: unexpected error: {exc!r}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
