"""
Command-line front end for the geometry library.
Runs single computations and seeded verification suites and writes JSON reports.
"""

import os
import sys
import json
import time
import logging
import argparse
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from dataclasses_json import dataclass_json
from scipy.linalg import expm

# Add project root to Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core import __version__
from core.config import (
    DEFAULT_ORDER, DEFAULT_TRIALS, MIN_ORDER, VERIFY_NORM_CAP, ManifoldConfig, Tolerances, parse_manifold
)
from core.errors import GeophaseError, ParseError, ValidationError
from core.utils import (
    complex_to_pair, configure_logging, create_error_response, create_success_response, log_performance,
    matrix_to_pairs
)
from core.matfun import phase_distance
from core.grassmann import (
    GrassmannPoint, GroupElement, ManifoldSpec, act, b_to_z, compose_points,
    inverse_element, pseudo_unitarity_residual, random_group_element, random_point, section,
    section_from_tangent, tangent_generator, z_to_b
)
from core.phases import (
    AreaMethod, PHASE_AREA_SIGN, chordal_distance, kernel, normalized_overlap_phase, triangle_area,
    triangle_area_closed, triangle_area_quadrature
)
from core.cocycles import (
    automorphy_cocycle_residual, block_product, cocycle_triple_report, gauss_alpha,
    gw_cocycle_condition_residual, isotropy_completion, kernel_covariance_residual,
    multiplicative_phase, phase_chain_value, product_residual, zzz_residual
)
from core.rankone import (
    RankOnePoint, RankOneSpace, grassmann_reduction_residual, plane_residual, rank1_area, rank1_phase
)

logger = logging.getLogger(__name__)

REPORT_SCHEMA = 1
COMMANDS = ('area', 'phase', 'cocycle', 'verify', 'rankone')
DEFAULT_MANIFOLDS = ((1, 1, 1), (1, 1, -1))
RANKONE_RADIUS = 0.7

EXIT_OK = 0
EXIT_IDENTITY_FAILURE = 1
EXIT_INPUT_ERROR = 2

# identity name -> Tolerances field
IDENTITY_TOLERANCE = {
    'round_trip': 'algebraic',
    'exponential': 'exponential',
    'quadrature_area': 'quadrature_area',
    'phase_area': 'phase_area',
    'block_product': 'algebraic',
    'schur_alpha': 'algebraic',
    'zzz': 'zzz',
    'phase_chain': 'algebraic',
    'isotropy': 'exponential',
    'bridge': 'exponential',
    'dupont_closed': 'dupont_closed',
    'dupont_quadrature': 'quadrature_cocycle',
    'cocycle_condition': 'cocycle_condition',
    'automorphy': 'automorphy',
    'kernel_covariance': 'automorphy',
    'rankone_quadrature': 'rankone_quadrature',
    'rankone_algebraic': 'rankone_algebraic',
    'plane': 'plane',
}

COMMAND_CHECKS = {
    'area': ('area',),
    'phase': ('phase',),
    'cocycle': ('gauss', 'cocycle'),
    'verify': ('charts', 'area', 'phase', 'gauss', 'cocycle', 'group'),
}

INPUT_COUNTS = {
    'area': (2, 3),
    'phase': (2,),
    'cocycle': (2,),
    'rankone': (2,),
}


@dataclass
class JobSpec:
    """One run of the command-line tool."""
    command: str
    manifolds: List[ManifoldConfig] = field(default_factory=list)
    inputs: List[np.ndarray] = field(default_factory=list)
    seed: Optional[int] = None
    trials: int = DEFAULT_TRIALS
    order: int = DEFAULT_ORDER
    tolerance_overrides: Dict[str, float] = field(default_factory=dict)
    space: Optional[str] = None
    weight: Optional[float] = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ValidationError(f"Unknown command: {self.command}")
        if self.trials < 1:
            raise ValidationError("trials must be >= 1")
        if self.order < MIN_ORDER:
            raise ValidationError(f"order must be >= {MIN_ORDER}")

        if self.inputs:
            if self.command == 'verify':
                raise ValidationError("verify draws its own instances and takes no inputs")
            if len(self.inputs) not in INPUT_COUNTS[self.command]:
                raise ValidationError(
                    f"{self.command} expects {' or '.join(map(str, INPUT_COUNTS[self.command]))} matrices, "
                    f"got {len(self.inputs)}"
                )
            if self.command == 'rankone':
                if self.space is None:
                    raise ValidationError("rankone inputs need a 'space' field")
                if any(matrix.shape != (1, 1) for matrix in self.inputs):
                    raise ValidationError("rankone inputs must be 1x1 matrices")
            else:
                if len(self.manifolds) != 1:
                    raise ValidationError("explicit inputs need exactly one --manifold")
                manifold = self.manifolds[0]
                for index, matrix in enumerate(self.inputs):
                    if matrix.shape != (manifold.n, manifold.m):
                        raise ValidationError(
                            f"input {index} is {matrix.shape[0]}x{matrix.shape[1]}, "
                            f"manifold needs {manifold.n}x{manifold.m}"
                        )

    def echo(self) -> Dict[str, Any]:
        """JSON-ready copy of the job for the report."""
        return {
            'command': self.command,
            'manifolds': [manifold.to_dict() for manifold in self.manifolds],
            'inputs': [matrix_to_pairs(matrix) for matrix in self.inputs],
            'seed': self.seed,
            'trials': self.trials,
            'order': self.order,
            'tolerance_overrides': dict(sorted(self.tolerance_overrides.items())),
            'space': self.space,
            'weight': self.weight,
        }


@dataclass_json
@dataclass
class IdentitySummary:
    """Outcome of one identity class."""
    passed: bool
    max_residual: Optional[float]
    tolerance: float
    cases: int
    errors: int = 0


@dataclass_json
@dataclass
class Report:
    """Machine-readable result of a job."""
    schema: int
    version: str
    command: str
    success: bool
    identities: Dict[str, Dict[str, IdentitySummary]]
    cases: List[Dict[str, Any]]
    input: Dict[str, Any]
    tolerances: Tolerances
    wall_time_seconds: float = 0.0

    def render(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


# JSON codec

def _parse_entry(entry: Any, row: int, col: int) -> complex:
    if not isinstance(entry, list) or len(entry) != 2:
        raise ParseError("Entry must be a [re, im] pair", row=row, col=col)
    re, im = entry
    for part in (re, im):
        if isinstance(part, bool) or not isinstance(part, (int, float)):
            raise ParseError("Entry parts must be numbers", row=row, col=col)
    value = complex(float(re), float(im))
    if not np.isfinite(value.real) or not np.isfinite(value.imag):
        raise ParseError("Entry must be finite", row=row, col=col)
    return value


def parse_matrix_value(value: Any) -> np.ndarray:
    """Matrix from already-decoded nested [re, im] pairs."""
    if not isinstance(value, list) or not value:
        raise ParseError("Matrix must be a non-empty list of rows")

    width = None
    rows = []
    for row_index, row in enumerate(value):
        if not isinstance(row, list) or not row:
            raise ParseError("Row must be a non-empty list of entries", row=row_index)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(f"Ragged row: expected {width} entries, got {len(row)}", row=row_index)
        rows.append([_parse_entry(entry, row_index, col_index) for col_index, entry in enumerate(row)])

    return np.array(rows, dtype=complex)


def parse_matrix_json(text: str) -> np.ndarray:
    """Matrix from a JSON string of nested [re, im] pairs."""
    try:
        value = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON: {e.msg}", row=e.lineno, col=e.colno)
    return parse_matrix_value(value)


def load_job_file(path: str) -> Dict[str, Any]:
    """Read an input file: {"inputs": [matrix, ...], "space": ..., "weight": ...}."""
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            payload = json.load(handle)
    except OSError as e:
        raise ValidationError(f"Cannot read {path}: {str(e)}")
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON in {path}: {e.msg}", row=e.lineno, col=e.colno)

    if isinstance(payload, list):
        payload = {'inputs': payload}
    if not isinstance(payload, dict) or not isinstance(payload.get('inputs'), list):
        raise ParseError("Input file must hold an 'inputs' list of matrices")

    return {
        'inputs': [parse_matrix_value(matrix) for matrix in payload['inputs']],
        'space': payload.get('space'),
        'weight': payload.get('weight'),
    }


# Checks. Each returns (residuals by identity, values) for one instance.

Residuals = Tuple[Dict[str, float], Dict[str, Any]]


def _check_charts(Z1: GrassmannPoint, Z2: GrassmannPoint, order: int) -> Residuals:
    Zm = np.asarray(Z1.Z)
    g = section(Z1)
    B = z_to_b(Z1)
    round_trip = max(
        float(np.linalg.norm(np.asarray(b_to_z(B).Z) - Zm)),
        pseudo_unitarity_residual(g),
        float(np.linalg.norm(np.asarray(section(-Z1).U) - np.asarray(inverse_element(g).U))),
        float(np.linalg.norm(np.asarray(compose_points(Z1, Z2).Z) - np.asarray(act(g, Z2).Z))),
    )
    exponential_form = np.asarray(section_from_tangent(B).U)
    exponential = max(
        float(np.linalg.norm(exponential_form - np.asarray(g.U))),
        float(np.linalg.norm(exponential_form - expm(tangent_generator(B)))),
    )
    return {'round_trip': round_trip, 'exponential': exponential}, {}


def _check_area(Z1: GrassmannPoint, Z2: GrassmannPoint, order: int) -> Residuals:
    closed = triangle_area_closed(Z1, Z2)
    quadrature = triangle_area_quadrature(Z1, Z2, order)
    values = {'closed': closed.value, 'quadrature': quadrature.value, 'est_error': quadrature.est_error}
    return {'quadrature_area': abs(quadrature.value - closed.value)}, values


def _check_phase(Z1: GrassmannPoint, Z2: GrassmannPoint, order: int) -> Residuals:
    overlap = kernel(Z1, Z2)
    phase = normalized_overlap_phase(Z1, Z2)
    area = triangle_area_closed(Z1, Z2).value
    values = {
        'kernel': complex_to_pair(overlap.value),
        'phase': phase,
        'area': area,
        'chordal_distance': chordal_distance(Z1, Z2),
    }
    expected = 2.0 * PHASE_AREA_SIGN * Z1.spec.weight_k * area
    return {'phase_area': phase_distance(phase, expected)}, values


def _check_gauss(Z1: GrassmannPoint, Z2: GrassmannPoint, order: int) -> Residuals:
    bp = block_product(Z1, Z2)
    block = max(
        product_residual(bp, Z1, Z2),
        bp.gauss_residual(),
        float(np.linalg.norm(bp.Zprime - np.asarray(compose_points(Z1, Z2).Z))),
    )
    phi = multiplicative_phase(Z1, Z2)
    _, off_diagonal = isotropy_completion(Z1, Z2)
    residuals = {
        'block_product': block,
        'schur_alpha': float(np.linalg.norm(gauss_alpha(bp, Z1, Z2) - bp.alpha)),
        'zzz': zzz_residual(Z1, Z2),
        'phase_chain': phase_distance(phase_chain_value(Z1, Z2), phi),
        'isotropy': off_diagonal,
    }
    return residuals, {'phi': phi}


def _check_cocycle(Z1: GrassmannPoint, Z2: GrassmannPoint, order: int) -> Residuals:
    triple = cocycle_triple_report(Z1, Z2, order)
    values = {'f': triple.f, 'c': triple.c, 'c_closed': triple.c_closed, 'phi': triple.phi}
    return dict(triple.residuals), values


def _check_group(g1: GroupElement, g2: GroupElement, g3: GroupElement,
                 X: GrassmannPoint, Y: GrassmannPoint) -> Residuals:
    residuals = {
        'cocycle_condition': gw_cocycle_condition_residual(g1, g2, g3),
        'automorphy': automorphy_cocycle_residual(g1, g2, X),
        'kernel_covariance': kernel_covariance_residual(g1, X, Y),
    }
    return residuals, {}


PAIR_CHECKS: Dict[str, Callable[[GrassmannPoint, GrassmannPoint, int], Residuals]] = {
    'charts': _check_charts,
    'area': _check_area,
    'phase': _check_phase,
    'gauss': _check_gauss,
    'cocycle': _check_cocycle,
}


def _check_rank_one(p: RankOnePoint, q: RankOnePoint, order: int) -> Residuals:
    phase = rank1_phase(p, q)
    area = rank1_area(p, q, order)
    values = {'phase': phase, 'area': area}
    if p.space is RankOneSpace.PLANE:
        return {'plane': plane_residual(p, q)}, values
    residuals = {
        'rankone_quadrature': abs(2.0 * p.weight * area - phase),
        'rankone_algebraic': grassmann_reduction_residual(p, q),
    }
    return residuals, values


# Suite bookkeeping

class SuiteCollector:
    """Accumulates case records and per-identity summaries in deterministic order."""

    def __init__(self, tolerances: Tolerances):
        self.tolerances = tolerances
        self.cases: List[Dict[str, Any]] = []
        self.identities: Dict[str, Dict[str, IdentitySummary]] = {}

    def _summary(self, block: str, identity: str) -> IdentitySummary:
        summaries = self.identities.setdefault(block, {})
        if identity not in summaries:
            tolerance = getattr(self.tolerances, IDENTITY_TOLERANCE[identity])
            summaries[identity] = IdentitySummary(passed=True, max_residual=None, tolerance=tolerance, cases=0)
        return summaries[identity]

    def run_case(self, block: str, check: str, identities: Sequence[str], trial: Optional[int],
                 inputs: Dict[str, Any], compute: Callable[[], Residuals]) -> None:
        """Run one case; failures become error records and fail the check's identities."""
        try:
            residuals, values = compute()
        except (GeophaseError, np.linalg.LinAlgError) as e:
            logger.error(f"Case {block}/{check}/{trial} failed: {str(e)}")
            record = create_error_response(str(e), type(e).__name__, {
                'block': block, 'check': check, 'trial': trial, 'inputs': inputs
            })
            self.cases.append(record)
            for identity in identities:
                summary = self._summary(block, identity)
                summary.cases += 1
                summary.errors += 1
                summary.passed = False
            return

        for identity, residual in residuals.items():
            summary = self._summary(block, identity)
            summary.cases += 1
            summary.max_residual = residual if summary.max_residual is None else max(summary.max_residual, residual)
            if not residual <= summary.tolerance:
                summary.passed = False

        self.cases.append(create_success_response({
            'block': block,
            'check': check,
            'trial': trial,
            'inputs': inputs,
            'residuals': {name: float(value) for name, value in residuals.items()},
            'values': values,
        }))

    @property
    def success(self) -> bool:
        return all(summary.passed for block in self.identities.values() for summary in block.values())


CHECK_IDENTITIES = {
    'charts': ('round_trip', 'exponential'),
    'area': ('quadrature_area',),
    'phase': ('phase_area',),
    'gauss': ('block_product', 'schur_alpha', 'zzz', 'phase_chain', 'isotropy'),
    'cocycle': ('bridge', 'dupont_quadrature', 'dupont_closed'),
    'group': ('cocycle_condition', 'automorphy', 'kernel_covariance'),
    'sphere': ('rankone_quadrature', 'rankone_algebraic'),
    'disc': ('rankone_quadrature', 'rankone_algebraic'),
    'plane': ('plane',),
}


def manifold_key(manifold: ManifoldConfig) -> str:
    return f"{manifold.n},{manifold.m},{manifold.epsilon}"


def _point_inputs(**points: GrassmannPoint) -> Dict[str, Any]:
    return {name: matrix_to_pairs(np.asarray(point.Z)) for name, point in points.items()}


def _run_explicit(job: JobSpec, collector: SuiteCollector) -> None:
    """Evaluate the checks of the command on the job's own matrices."""
    manifold = job.manifolds[0]
    spec = ManifoldSpec(manifold.n, manifold.m, manifold.epsilon, manifold.weight_k)
    points = [GrassmannPoint(spec, matrix) for matrix in job.inputs]
    block = manifold_key(manifold)

    if job.command == 'area' and len(points) == 3:
        Z0, Z1, Z2 = points

        def compute() -> Residuals:
            closed = triangle_area(Z0, Z1, Z2)
            quadrature = triangle_area(Z0, Z1, Z2, AreaMethod.QUADRATURE, job.order)
            values = {'closed': closed.value, 'quadrature': quadrature.value, 'est_error': quadrature.est_error}
            return {'quadrature_area': abs(quadrature.value - closed.value)}, values

        collector.run_case(block, 'area', CHECK_IDENTITIES['area'], None,
                           _point_inputs(Z0=Z0, Z1=Z1, Z2=Z2), compute)
        return

    Z1, Z2 = points
    for check in COMMAND_CHECKS[job.command]:
        collector.run_case(block, check, CHECK_IDENTITIES[check], None, _point_inputs(Z1=Z1, Z2=Z2),
                           lambda check=check: PAIR_CHECKS[check](Z1, Z2, job.order))


def _run_random(job: JobSpec, collector: SuiteCollector) -> None:
    """Seeded random instances for every requested manifold and check."""
    seed = job.seed or 0
    for manifold_index, manifold in enumerate(job.manifolds):
        spec = ManifoldSpec(manifold.n, manifold.m, manifold.epsilon, manifold.weight_k)
        block = manifold_key(manifold)
        logger.info(f"Running {job.command} suite on ({block}) with {job.trials} trials")

        for check_index, check in enumerate(COMMAND_CHECKS[job.command]):
            for trial in range(job.trials):
                case_seed = [seed, manifold_index, check_index, trial]

                if check == 'group':
                    g1, g2, g3 = (random_group_element(spec, case_seed + [i]) for i in range(3))
                    X = random_point(spec, case_seed + [3], VERIFY_NORM_CAP)
                    Y = random_point(spec, case_seed + [4], VERIFY_NORM_CAP)
                    inputs = {
                        'g1': matrix_to_pairs(np.asarray(g1.U)),
                        'g2': matrix_to_pairs(np.asarray(g2.U)),
                        'g3': matrix_to_pairs(np.asarray(g3.U)),
                        **_point_inputs(X=X, Y=Y),
                    }
                    collector.run_case(block, check, CHECK_IDENTITIES[check], trial, inputs,
                                       lambda: _check_group(g1, g2, g3, X, Y))
                    continue

                Z1 = random_point(spec, case_seed + [0], VERIFY_NORM_CAP)
                Z2 = random_point(spec, case_seed + [1], VERIFY_NORM_CAP)
                collector.run_case(block, check, CHECK_IDENTITIES[check], trial, _point_inputs(Z1=Z1, Z2=Z2),
                                   lambda: PAIR_CHECKS[check](Z1, Z2, job.order))


def _rank_one_point(z: complex, space: RankOneSpace, weight: Optional[float]) -> RankOnePoint:
    if space is RankOneSpace.PLANE:
        return RankOnePoint.plane(z)
    if weight is None:
        weight = 0.5 if space is RankOneSpace.SPHERE else 1.0
    return RankOnePoint(z, space, weight)


def _run_rank_one(job: JobSpec, collector: SuiteCollector) -> None:
    """Rank-one anchors on given points or on seeded random pairs of every space."""
    if job.inputs:
        try:
            space = RankOneSpace(job.space)
        except ValueError:
            raise ValidationError(f"Unknown rank-one space: {job.space}")
        p, q = (_rank_one_point(complex(matrix[0, 0]), space, job.weight) for matrix in job.inputs)
        inputs = {'z1': complex_to_pair(p.z), 'z2': complex_to_pair(q.z)}
        collector.run_case(space.value, space.value, CHECK_IDENTITIES[space.value], None, inputs,
                           lambda: _check_rank_one(p, q, job.order))
        return

    seed = job.seed or 0
    for space_index, space in enumerate(RankOneSpace):
        for trial in range(job.trials):
            rng = np.random.default_rng([seed, space_index, trial])
            radius = RANKONE_RADIUS * rng.uniform(0.0, 1.0, size=2)
            angle = rng.uniform(-np.pi, np.pi, size=2)
            z1, z2 = radius * np.exp(1j * angle)
            p, q = _rank_one_point(z1, space, job.weight), _rank_one_point(z2, space, job.weight)
            inputs = {'z1': complex_to_pair(p.z), 'z2': complex_to_pair(q.z)}
            collector.run_case(space.value, space.value, CHECK_IDENTITIES[space.value], trial, inputs,
                               lambda: _check_rank_one(p, q, job.order))


@log_performance('run_job')
def run_job(job: JobSpec) -> Report:
    """Execute a job and assemble its report."""
    start_time = time.perf_counter()
    job.validate()
    tolerances = Tolerances().with_overrides(job.tolerance_overrides)
    collector = SuiteCollector(tolerances)

    if job.command == 'rankone':
        _run_rank_one(job, collector)
    elif job.inputs:
        _run_explicit(job, collector)
    else:
        _run_random(job, collector)

    report = Report(
        schema=REPORT_SCHEMA,
        version=__version__,
        command=job.command,
        success=collector.success,
        identities=collector.identities,
        cases=collector.cases,
        input=job.echo(),
        tolerances=tolerances,
        wall_time_seconds=round(time.perf_counter() - start_time, 6),
    )
    logger.info(f"Job {job.command} finished: {'pass' if report.success else 'FAIL'}")
    return report


# Command-line surface

def _parse_tolerance(text: str) -> Tuple[str, str]:
    key, separator, value = text.partition('=')
    if not separator or not key.strip():
        raise ValidationError(f"Tolerance override must be KEY=VAL, got {text!r}")
    return key.strip(), value.strip()


def _parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="geophase",
        description="Geometric phases, symplectic areas and cocycles on complex Grassmann manifolds.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--manifold", dest="manifolds", action="append", help="n,m,eps (repeatable)")
    parser.add_argument("--k", dest="weight_k", type=int, default=1)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    parser.add_argument("--order", type=int, default=DEFAULT_ORDER)
    parser.add_argument("--in", dest="in_path")
    parser.add_argument("--out", dest="out_path")
    parser.add_argument("--tol", dest="tolerances", action="append", default=[], help="KEY=VAL (repeatable)")
    parser.add_argument("--log-level", dest="log_level", default="WARNING")
    return parser.parse_args(argv)


def build_job(args: argparse.Namespace) -> JobSpec:
    """Translate parsed arguments into a validated JobSpec."""
    if args.weight_k < 1:
        raise ValidationError("--k must be >= 1")

    triples = [parse_manifold(text) for text in (args.manifolds or [])]
    if not triples:
        triples = list(DEFAULT_MANIFOLDS)
    manifolds = [ManifoldConfig(n, m, eps, args.weight_k) for n, m, eps in triples]

    payload = load_job_file(args.in_path) if args.in_path else {'inputs': [], 'space': None, 'weight': None}
    overrides = dict(_parse_tolerance(text) for text in args.tolerances)

    job = JobSpec(
        command=args.command,
        manifolds=manifolds,
        inputs=payload['inputs'],
        seed=args.seed,
        trials=args.trials,
        order=args.order,
        tolerance_overrides=overrides,
        space=payload['space'],
        weight=payload['weight'],
    )
    job.validate()
    Tolerances().with_overrides(overrides)
    return job


def _emit(text: str, out_path: Optional[str]) -> None:
    if out_path:
        directory = os.path.dirname(out_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(out_path, 'w', encoding='utf-8') as handle:
            handle.write(text + "\n")
    else:
        print(text)


def main(argv: Optional[List[str]] = None) -> int:
    args = _parse_args(argv)
    try:
        configure_logging(args.log_level)
    except ValueError as e:
        print(json.dumps(create_error_response(str(e), 'ValidationError'), sort_keys=True, indent=2))
        return EXIT_INPUT_ERROR

    try:
        job = build_job(args)
        report = run_job(job)
    except GeophaseError as e:
        logger.error(f"Job {args.command} failed: {str(e)}")
        _emit(json.dumps(create_error_response(str(e), type(e).__name__), sort_keys=True, indent=2), args.out_path)
        return EXIT_INPUT_ERROR

    _emit(report.render(), args.out_path)
    return EXIT_OK if report.success else EXIT_IDENTITY_FAILURE


if __name__ == "__main__":
    raise SystemExit(main())
