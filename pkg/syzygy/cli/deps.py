"""
Shared flags and the flag -> model -> diagram pipeline used by the commands
"""
import argparse
import logging
from dataclasses import dataclass, field
from math import comb
from typing import Any, Dict, List, Optional, Tuple

from syzygy.core.config import defaults, settings
from syzygy.core.errors import DegenerateModelError, UsageError
from syzygy.models.module import CoordinateRing, GradedModule
from syzygy.schemas.betti import BettiDiagram
from syzygy.schemas.curve import BundleKind, LineBundleData
from syzygy.schemas.field import PrimeFieldConfig
from syzygy.schemas.report import RunReport, StrandTiming
from syzygy.schemas.ring import RingSpec
from syzygy.services.curve_service import curve_service
from syzygy.services.field_service import field_service
from syzygy.services.gring_service import graded_ring_service
from syzygy.services.koszul_service import StrandReport, koszul_service
from syzygy.services.plane_curve_service import plane_curve_service

logger = logging.getLogger(__name__)

MODELS = ("twisted-cubic", "residue-field", "p1", "p1-split", "nodal-split", "rational-nodal", "plane")
BUNDLES = tuple(kind.value for kind in BundleKind if kind != BundleKind.CUSTOM)


@dataclass
class ModelContext:
    """A constructed model and everything the report needs to describe it"""

    name: str
    field: PrimeFieldConfig
    module: GradedModule
    seed: int
    genus: Optional[int] = None
    degree: Optional[int] = None
    bundle: Optional[LineBundleData] = None
    ring: Optional[CoordinateRing] = None
    factors: Optional[Tuple[LineBundleData, LineBundleData]] = None
    failures: List[Dict[str, Any]] = field(default_factory=list)
    descriptor: Dict[str, Any] = field(default_factory=dict)

    @property
    def kind(self) -> Optional[BundleKind]:
        return self.bundle.kind if self.bundle is not None else None


@dataclass
class CommandResult:
    payload: Dict[str, Any]
    text: str
    exit_code: int = 0


# ------------------------------------------------------------------ flags


def add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--prime", type=int, default=None, help="Prime modulus (default: smallest admissible prime >= 10^6)")
    parser.add_argument("--seed", type=int, default=0, help="Seed of the random model")
    parser.add_argument("--pmax", type=int, default=None, help="Largest column p")
    parser.add_argument("--qmax", type=int, default=None, help="Largest row q")
    parser.add_argument("--format", dest="output_format", choices=("table", "json", "both"), default="table")
    parser.add_argument("--out", default=None, help="Write JSON to this file instead of stdout")
    parser.add_argument("--threads", type=int, default=None, help=f"Worker threads (default SYZYGY_THREADS or {settings.threads})")
    parser.add_argument("--timings", action="store_true", help="Include per-strand timings in JSON")
    parser.add_argument("--no-verify", dest="verify", action="store_false", help="Skip the d o d = 0 check")
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("-q", "--quiet", action="store_true")


def add_model_flags(parser: argparse.ArgumentParser, default_model: str = "rational-nodal") -> None:
    parser.add_argument("--model", choices=MODELS, default=default_model)
    parser.add_argument("--genus", type=int, default=None)
    parser.add_argument("--bundle", choices=BUNDLES, default=None)
    parser.add_argument("--level", type=int, default=2, help="Torsion level of eta for paracanonical bundles")
    parser.add_argument("--general-eta", action="store_true", help="Use a general, non-torsion eta")
    parser.add_argument("--degree", type=int, default=None, help="Degree of the twist bundle or plane curve")
    parser.add_argument("--nodes", type=int, default=0, help="Number of nodes of a plane curve")
    parser.add_argument("--vars", type=int, default=4, help="Number of variables for the residue field")
    parser.add_argument("--d1", type=int, default=None)
    parser.add_argument("--d2", type=int, default=None)


# ---------------------------------------------------------------- windows


def resolve_bundle(args: argparse.Namespace, fallback: BundleKind = BundleKind.CANONICAL) -> BundleKind:
    if args.bundle is not None:
        return BundleKind(args.bundle)
    if args.model == "plane":
        return BundleKind.ADJOINT_CANONICAL
    return fallback


def default_window(args: argparse.Namespace) -> Tuple[int, int]:
    """p_max = r, q_max covering every row the model can have"""
    model = args.model
    if model == "twisted-cubic":
        return 3, 2
    if model == "residue-field":
        return args.vars, 0
    if model == "p1":
        return _require(args.degree, "--degree"), 2
    if model == "p1-split":
        return _require(args.d1, "--d1") + _require(args.d2, "--d2"), 2
    if model == "nodal-split":
        genus = _require(args.genus, "--genus")
        return _require(args.d1, "--d1") + _require(args.d2, "--d2") - genus, defaults.nonspecial_q_max
    if model == "plane":
        degree = _require(args.degree, "--degree")
        genus = comb(degree - 1, 2) - args.nodes
        return max(genus - 1, 0), 3
    genus = _require(args.genus, "--genus")
    kind = BundleKind(args.bundle)
    if kind == BundleKind.CANONICAL:
        return max(genus - 1, 0), defaults.canonical_q_max
    if kind == BundleKind.PARACANONICAL:
        return max(genus - 2, 0), defaults.nonspecial_q_max
    degree = _require(args.degree, "--degree")
    return degree - genus, defaults.nonspecial_q_max + 1


def _require(value: Optional[int], flag: str) -> int:
    if value is None:
        raise UsageError(f"{flag} is required for this model")
    return value


def resolve_window(args: argparse.Namespace) -> Tuple[int, int]:
    p_default, q_default = default_window(args)
    p_max = p_default if args.pmax is None else args.pmax
    q_max = q_default if args.qmax is None else args.qmax
    if p_max < 0 or q_max < 0:
        raise UsageError(f"Window must be nonnegative, got p_max={p_max}, q_max={q_max}")
    return p_max, q_max


def default_cliff(context: ModelContext) -> int:
    """Generic Cliff = floor((g-1)/2); d-4 for a plane curve of degree d >= 5 with few nodes"""
    if context.name == "plane":
        degree = context.descriptor["degree"]
        if degree == 4:
            # smooth quartics are canonical curves of genus 3; nodal ones are hyperelliptic or rational
            return 1 if context.descriptor["nodes"] == 0 else 0
        return degree - 4
    return (context.genus - 1) // 2


# ----------------------------------------------------------------- models


def build_field(args: argparse.Namespace) -> PrimeFieldConfig:
    level = 1
    if args.model == "rational-nodal" and args.bundle == BundleKind.PARACANONICAL.value and not args.general_eta:
        level = args.level
    return field_service.prime_field(level=level, prime=args.prime)


def _checked_ring(bundle: LineBundleData, max_degree: int) -> CoordinateRing:
    ring = curve_service.coordinate_ring(bundle, max_degree)
    if not ring.audit.passed and curve_service.normality_expected(bundle):
        failure = ring.audit.first_failure()
        raise DegenerateModelError(
            f"Normality audit failed in degree {failure.degree}: {failure.dimension} < {failure.expected}"
        )
    return ring


def build_model(args: argparse.Namespace, max_degree: int) -> ModelContext:
    """Construct the model named by --model, re-drawing seeds while it comes out degenerate"""
    model = args.model
    field_config = build_field(args)
    descriptor: Dict[str, Any] = {"name": model}

    if model == "twisted-cubic":
        ideal = graded_ring_service.twisted_cubic_ideal(field_config)
        module = graded_ring_service.quotient_module(ideal, max_degree, label="twisted cubic")
        return ModelContext(name=model, field=field_config, module=module, seed=args.seed, genus=0, degree=3, descriptor=descriptor)

    if model == "residue-field":
        if args.vars < 1:
            raise UsageError(f"--vars must be >= 1, got {args.vars}")
        ring_spec = RingSpec(num_vars=args.vars, field=field_config)
        module = graded_ring_service.residue_field_module(ring_spec, max_degree)
        descriptor["vars"] = args.vars
        return ModelContext(name=model, field=field_config, module=module, seed=args.seed, descriptor=descriptor)

    if model == "p1":
        degree = _require(args.degree, "--degree")

        def builder(seed: int):
            line = curve_service.rational_nodal_curve(field_config, 0, seed)
            bundle = curve_service.twist_sections(line, degree, max_degree=max_degree)
            return bundle, _checked_ring(bundle, max_degree), None

        descriptor["degree"] = degree
        genus = 0
    elif model == "p1-split":
        d1, d2 = _require(args.d1, "--d1"), _require(args.d2, "--d2")

        def builder(seed: int):
            total, first, second = curve_service.p1_split(field_config, d1, d2, max_degree, seed)
            return total, _checked_ring(total, max_degree), (first, second)

        descriptor.update(d1=d1, d2=d2)
        degree, genus = d1 + d2, 0
    elif model == "nodal-split":
        genus = _require(args.genus, "--genus")
        d1, d2 = _require(args.d1, "--d1"), _require(args.d2, "--d2")

        def builder(seed: int):
            total, first, second = curve_service.nodal_split(field_config, genus, d1, d2, max_degree, seed)
            return total, _checked_ring(total, max_degree), (first, second)

        descriptor.update(genus=genus, d1=d1, d2=d2)
        degree = d1 + d2
    elif model == "plane":
        degree = _require(args.degree, "--degree")
        nodes = args.nodes
        if resolve_bundle(args) != BundleKind.ADJOINT_CANONICAL:
            raise UsageError("Plane models carry the adjoint-canonical bundle only")

        def builder(seed: int):
            curve = plane_curve_service.plane_curve_with_nodes(field_config, degree, nodes, seed, max_degree)
            bundle = plane_curve_service.adjoint_canonical_sections(curve)
            return bundle, _checked_ring(bundle, max_degree), None

        genus = comb(degree - 1, 2) - nodes
        descriptor.update(degree=degree, nodes=nodes, bundle=BundleKind.ADJOINT_CANONICAL.value, genus=genus)
    else:
        genus = _require(args.genus, "--genus")
        kind = resolve_bundle(args)
        degree = 2 * genus - 2 if kind in (BundleKind.CANONICAL, BundleKind.PARACANONICAL) else _require(args.degree, "--degree")

        def builder(seed: int):
            curve = curve_service.rational_nodal_curve(field_config, genus, seed)
            if kind == BundleKind.CANONICAL:
                bundle = curve_service.canonical_sections(curve, max_degree)
            elif kind == BundleKind.PARACANONICAL:
                if args.general_eta:
                    eta = curve_service.general_eta(field_config, genus, seed)
                else:
                    eta = curve_service.torsion_bundle(field_config, genus, args.level, seed)
                bundle = curve_service.paracanonical_sections(curve, eta, max_degree)
            elif kind == BundleKind.TWIST:
                bundle = curve_service.twist_sections(curve, degree, max_degree=max_degree)
            else:
                raise UsageError(f"Rational nodal models do not carry {kind.value} bundles")
            return bundle, _checked_ring(bundle, max_degree), None

        descriptor.update(genus=genus, bundle=kind.value, degree=degree)
        if kind == BundleKind.PARACANONICAL:
            descriptor["level"] = 0 if args.general_eta else args.level

    (bundle, ring, factors), used_seed, failures = curve_service.with_redraws(builder, args.seed)
    descriptor["seed_used"] = used_seed
    return ModelContext(
        name=model,
        field=field_config,
        module=ring.module,
        seed=used_seed,
        genus=genus,
        degree=degree,
        bundle=bundle,
        ring=ring,
        factors=factors,
        failures=failures,
        descriptor=descriptor,
    )


# ---------------------------------------------------------------- pipeline


def compute(args: argparse.Namespace) -> Tuple[ModelContext, BettiDiagram, List[StrandReport]]:
    """Flags -> model -> Betti diagram over the requested window"""
    if args.model == "rational-nodal" and args.bundle is None:
        args.bundle = BundleKind.CANONICAL.value
    p_max, q_max = resolve_window(args)
    context = build_model(args, q_max + 1)
    diagram, reports = koszul_service.compute_diagram(
        context.module,
        p_max,
        q_max,
        threads=settings.resolve_threads(args.threads),
        verify_complex=args.verify,
    )
    return context, diagram, reports


def build_report(
    command: str,
    args: argparse.Namespace,
    context: ModelContext,
    diagram: BettiDiagram,
    reports: List[StrandReport],
    predicates: Optional[Dict[str, Any]] = None,
) -> RunReport:
    audits: Dict[str, Any] = {
        "hilbert_mismatch": koszul_service.hilbert_consistency(diagram, context.module),
        "redraws": context.failures,
    }
    if context.ring is not None:
        audits["normality"] = context.ring.audit.as_dict()
        audits["quadrics"] = curve_service.quadric_count(context.ring)
    if args.verify:
        audits["complex"] = all(report.complex_ok is not False for report in reports)
        audits["commutation"] = graded_ring_service.check_commutation(context.module)
    return RunReport(
        command=command,
        model=context.descriptor,
        prime=context.field.p,
        seed=args.seed,
        ring_vars=diagram.num_vars,
        window={"p_max": diagram.p_max, "q_max": diagram.q_max},
        betti=[[p, q, b] for p, q, b in diagram.entries()],
        hilbert=context.module.hilbert_values(),
        audits=audits,
        predicates=predicates or {},
        timings=[
            StrandTiming(
                p=report.p,
                q=report.q,
                rows=report.rows,
                cols=report.cols,
                rank=report.rank_out,
                seconds=round(report.seconds, 4),
                complex_ok=report.complex_ok,
            )
            for report in reports
        ],
    )


def render_report(report: RunReport, diagram: BettiDiagram) -> str:
    """Header, Betti table, audits and strand timings as text"""
    model = ", ".join(f"{key}={value}" for key, value in sorted(report.model.items()))
    lines = [
        f"model: {model}",
        f"prime: {report.prime}  seed: {report.seed}  window: p <= {diagram.p_max}, q <= {diagram.q_max}",
        "",
        diagram.render(),
        "",
        f"hilbert: {report.hilbert}",
    ]
    normality = report.audits.get("normality")
    if normality is not None:
        failing = [degree for degree, entry in normality.items() if not entry["ok"]]
        lines.append(f"normality audit: {'pass' if not failing else 'fails in degrees ' + ', '.join(failing)}")
    if report.audits.get("hilbert_mismatch"):
        lines.append(f"hilbert mismatch in degrees {report.audits['hilbert_mismatch']}")
    if report.audits.get("redraws"):
        lines.append(f"redraws: {len(report.audits['redraws'])} seeds rejected")
    for name, result in report.predicates.items():
        witness = f" at {tuple(result['witness'])}" if result.get("witness") else ""
        lines.append(f"{name}: {result['status']}{witness} {result['message']}".rstrip())
    ranked = [t for t in report.timings if t.rows and t.cols]
    if ranked:
        lines.append("")
        lines.append("strand timings:")
        for timing in ranked:
            lines.append(f"  d_{timing.p},{timing.q} {timing.rows}x{timing.cols} rank {timing.rank} {timing.seconds:.2f}s")
    return "\n".join(lines)


def json_payload(report: RunReport, args: argparse.Namespace) -> Dict[str, Any]:
    return report.as_json_dict(include_timings=args.timings)
