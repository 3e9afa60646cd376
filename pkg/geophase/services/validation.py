"""
Validation suite: oracle equivalence, limits, qualitative figure claims and
positivity scans, collected into one pass/fail report.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..config_loader import FigureDataset, ValidationSettings, find_dataset
from ..exceptions import GeoPhaseError
from ..models.params import (
    CorrelatedProjection,
    MarkovianProjection,
    MemoryKernel,
    ModelKind,
    ModelParams,
    PostMarkovian,
)
from ..models.results import QuadratureConfig, SolverConfig, SolverMethod, SweepSpec
from ..models.state import BlochState, Picture, Trajectory
from ..utils.logging_config import LoggerFactory
from .evolutions import population_decay, sample_trajectory, xi_memory, xi_post
from .oracle import (
    compare,
    positivity_scan,
    rk4_order,
    solve,
    solve_correlated,
    solve_markovian,
    solve_memory_kernel,
    solve_post_markovian,
)
from .phase import fold_phase, phase_closed, phase_gap, phase_general
from .sweeps import SweepRow, principal_column, run_sweep

logger = LoggerFactory.create_logger(__name__)

QUICK_THETA_STRIDE = 3
QUICK_FIGURE_POINTS = 33


class CheckStatus(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INFO = "INFO"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: CheckStatus
    measured: float
    limit: Optional[float] = None
    detail: str = ""


@dataclass
class ValidationReport:
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status is not CheckStatus.FAIL for r in self.results)

    @property
    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if r.status is CheckStatus.FAIL]


def at_most(name: str, measured: float, limit: float, detail: str = "") -> CheckResult:
    """PASS when measured <= limit; NaN fails."""
    ok = bool(measured <= limit)
    return CheckResult(name, CheckStatus.PASS if ok else CheckStatus.FAIL, float(measured), limit, detail)


def at_least(name: str, measured: float, limit: float, detail: str = "") -> CheckResult:
    ok = bool(measured >= limit)
    return CheckResult(name, CheckStatus.PASS if ok else CheckStatus.FAIL, float(measured), limit, detail)


def _rate_label(model: ModelParams) -> str:
    return model.params_string().replace(";", " ")


# @agent:service-type orchestration
# @agent:complexity high
# @agent:side-effects cpu_bound
# @agent:test-coverage critical,oracle-equivalence,qualitative-claims
class ValidationSuite:
    """Runs every consistency check between the closed forms and the oracles.

    Each ``check_*`` method returns CheckResults; an exception inside one
    check becomes a FAIL for that check and the suite moves on.

    Architecture: one method per check family, figure sweeps cached per curve
    Critical Path: exit status of ``geophase validate``
    Failure Mode: failing checks are reported, never raised

    Args:
        settings: tolerances and grids (validation.yml plus overrides)
        datasets: figure datasets (figures.yml)
        quick: shorter spans and coarser grids for smoke runs
        threads: worker count for the figure sweeps
    """

    def __init__(
        self,
        settings: ValidationSettings,
        datasets: Sequence[FigureDataset],
        quick: bool = False,
        threads: int = 1,
    ):
        self.settings = settings
        self.datasets = list(datasets)
        self.quick = quick
        self.threads = threads
        self._sweeps: Dict[Tuple[str, str], List[SweepRow]] = {}
        self._trace_drifts: List[float] = []

    # ------------------------------------------------------------------ grids

    @property
    def oracle_thetas(self) -> List[float]:
        thetas = self.settings.angles("oracle_thetas")
        return thetas[::QUICK_THETA_STRIDE] if self.quick else thetas

    @property
    def oracle_periods(self) -> int:
        return 1 if self.quick else int(self.settings.grid("oracle_periods"))

    @property
    def kernel_tau_end(self) -> float:
        tau_end = float(self.settings.grid("kernel_tau_end"))
        return 0.5 * tau_end if self.quick else tau_end

    def figure_models(self) -> List[ModelParams]:
        """Distinct models across all figure datasets, in file order."""
        seen: Dict[str, ModelParams] = {}
        for dataset in self.datasets:
            for curve in dataset.curves:
                seen.setdefault(curve.model.label, curve.model)
        return list(seen.values())

    def _figure_spec(self, dataset: FigureDataset, model: ModelParams) -> SweepSpec:
        count = QUICK_FIGURE_POINTS if self.quick else dataset.theta_count
        return SweepSpec(
            model=model,
            theta_start=dataset.theta_start,
            theta_end=dataset.theta_end,
            theta_count=count,
            steps=dataset.steps,
        )

    def sweep(self, dataset_name: str, curve_name: str) -> List[SweepRow]:
        key = (dataset_name, curve_name)
        if key not in self._sweeps:
            dataset = find_dataset(self.datasets, dataset_name)
            self._sweeps[key] = run_sweep(self._figure_spec(dataset, dataset.curve(curve_name).model), self.threads)
        return self._sweeps[key]

    def reference_sweep(self, dataset_name: str, model: ModelParams) -> List[SweepRow]:
        key = (dataset_name, model.label)
        if key not in self._sweeps:
            dataset = find_dataset(self.datasets, dataset_name)
            self._sweeps[key] = run_sweep(self._figure_spec(dataset, model), self.threads)
        return self._sweeps[key]

    def _solver_config(self, t_end: float, dt: float, method: SolverMethod = SolverMethod.RK4) -> SolverConfig:
        cap = int(self.settings.grid("max_saved_samples"))
        raw = max(1, int(round(t_end / dt)))
        return SolverConfig(dt=dt, t_end=t_end, method=method, save_every=max(1, math.ceil(raw / cap)))

    # ----------------------------------------------------------------- runner

    def checks(self) -> List[Callable[[], Iterable[CheckResult]]]:
        return [
            self.check_markovian_oracle,
            self.check_correlated_oracle,
            self.check_memory_oracle,
            self.check_post_oracle,
            self.check_figure_oracles,
            self.check_trace_drift,
            self.check_rk4_order,
            self.check_xi_special_values,
            self.check_xi_limits,
            self.check_path_agreement,
            self.check_quadrature_convergence,
            self.check_unitary_limit,
            self.check_degenerate_theta,
            self.check_theta_pi_limit,
            self.check_fig2_claims,
            self.check_kernel_figure_claims,
            self.check_phase_kinship,
            self.check_short_time,
            self.check_visibility_bound,
            self.check_positivity,
        ]

    def run(self) -> ValidationReport:
        report = ValidationReport()
        for check in self.checks():
            name = check.__name__.replace("check_", "").replace("_", " ")
            logger.info("Running check", check=name)
            try:
                report.results.extend(check())
            except (GeoPhaseError, ArithmeticError, ValueError) as exc:
                logger.error("Check raised", check=name, error=str(exc))
                report.results.append(CheckResult(name, CheckStatus.FAIL, float("nan"), None, f"{type(exc).__name__}: {exc}"))

        logger.info(
            "Validation finished",
            checks=len(report.results),
            failed=len(report.failures),
            status="PASS" if report.passed else "FAIL",
        )
        return report

    # ---------------------------------------------------------------- oracles

    def _linear_oracle(self, model: ModelParams, solver: Callable[[BlochState, SolverConfig], Trajectory]) -> Tuple[float, float]:
        """Worst interaction- and Schroedinger-picture deviation over the theta grid."""
        t_end = self.oracle_periods * model.period
        base = SolverConfig.default(t_end, model.max_rate, model.omega)
        cfg = self._solver_config(t_end, base.dt)
        worst_interaction = 0.0
        worst_schroedinger = 0.0
        for theta in self.oracle_thetas:
            init = BlochState(theta=theta)
            numeric = solver(init, cfg)
            traces = (numeric.matrices[:, 0, 0] + numeric.matrices[:, 1, 1]).real
            self._trace_drifts.append(float(np.max(np.abs(traces - 1.0))))

            samples = cfg.n_steps // cfg.save_every
            exact = sample_trajectory(model, init, t_end, samples, Picture.INTERACTION)
            worst_interaction = max(worst_interaction, compare(exact, numeric).max_abs)
            exact_s = sample_trajectory(model, init, t_end, samples, Picture.SCHROEDINGER)
            worst_schroedinger = max(worst_schroedinger, compare(exact_s, numeric.to_schroedinger(model.omega)).max_abs)
        return worst_interaction, worst_schroedinger

    def check_markovian_oracle(self) -> List[CheckResult]:
        tolerance = self.settings.tolerance("markovian_oracle")
        results = []
        for rate in self.settings.numbers("markovian_rates"):
            model = MarkovianProjection(gamma2=rate)
            interaction, schroedinger = self._linear_oracle(
                model, lambda init, cfg: solve_markovian(rate, init, cfg)
            )
            results.append(at_most(f"markovian oracle gamma2={rate:g}", interaction, tolerance))
            results.append(at_most(f"markovian picture consistency gamma2={rate:g}", schroedinger, tolerance))
        return results

    def check_correlated_oracle(self) -> List[CheckResult]:
        tolerance = self.settings.tolerance("correlated_oracle")
        results = []
        for rate in self.settings.numbers("correlated_rates"):
            model = CorrelatedProjection(gamma=rate)
            interaction, schroedinger = self._linear_oracle(
                model, lambda init, cfg: solve_correlated(rate, rate, init, cfg)
            )
            results.append(at_most(f"correlated oracle gamma={rate:g}", interaction, tolerance))
            results.append(at_most(f"correlated picture consistency gamma={rate:g}", schroedinger, tolerance))
        return results

    @staticmethod
    def _decay_deviation(traj: Trajectory, init: BlochState, population: np.ndarray, coherence: np.ndarray) -> float:
        measured_pop = traj.matrices[:, 0, 0].real / init.cos_half ** 2
        measured_coh = (traj.matrices[:, 0, 1] / init.initial_coherence).real
        return float(max(np.max(np.abs(measured_pop - population)), np.max(np.abs(measured_coh - coherence))))

    def check_memory_oracle(self) -> List[CheckResult]:
        tolerance = self.settings.tolerance("memory_oracle")
        init = BlochState(theta=math.pi / 2)
        tau_end = self.kernel_tau_end
        results = []
        for ratio in self.settings.numbers("memory_ratios"):
            cfg = self._solver_config(tau_end, 1e-4)
            numeric = solve_memory_kernel(ratio, 1.0, init, cfg)
            tau = numeric.times
            deviation = self._decay_deviation(numeric, init, xi_memory(ratio, tau), xi_memory(0.5 * ratio, tau))
            results.append(at_most(f"memory oracle R={ratio:g}", deviation, tolerance))
        return results

    def check_post_oracle(self) -> List[CheckResult]:
        tolerance = self.settings.tolerance("post_oracle")
        init = BlochState(theta=math.pi / 2)
        tau_end = self.kernel_tau_end
        dt = float(self.settings.grid("post_dt"))
        results = []
        for ratio in self.settings.numbers("post_ratios"):
            deviations = []
            for step in (dt, 0.5 * dt):
                cfg = SolverConfig(dt=step, t_end=tau_end, method=SolverMethod.TRAPEZOID_VOLTERRA)
                numeric = solve_post_markovian(ratio, 1.0, init, cfg)
                tau = numeric.times
                deviations.append(self._decay_deviation(numeric, init, xi_post(ratio, tau), xi_post(0.5 * ratio, tau)))
            results.append(at_most(f"post oracle R={ratio:g}", deviations[0], tolerance))
            results.append(at_most(
                f"post oracle convergence R={ratio:g}", deviations[1], deviations[0],
                detail="deviation at dt/2 vs dt",
            ))
        return results

    def check_figure_oracles(self) -> List[CheckResult]:
        """Kernel models at every figure parameter set over the full oracle span."""
        init = BlochState(theta=math.pi / 2)
        max_volterra = int(self.settings.grid("max_volterra_steps"))
        post_dt = float(self.settings.grid("post_dt"))
        results = []
        for model in self.figure_models():
            t_end = self.oracle_periods * model.period
            if isinstance(model, MemoryKernel):
                base = SolverConfig.default(t_end, model.max_rate, model.omega)
                cfg = self._solver_config(t_end, base.dt)
                tolerance = self.settings.tolerance("memory_oracle")
            elif isinstance(model, PostMarkovian):
                dt = max(post_dt * min(1.0 / model.max_rate, 1.0 / model.omega), t_end / max_volterra)
                raw = max(1, int(round(t_end / dt)))
                cap = int(self.settings.grid("max_saved_samples"))
                cfg = SolverConfig(
                    dt=dt, t_end=t_end, method=SolverMethod.TRAPEZOID_VOLTERRA,
                    save_every=max(1, math.ceil(raw / cap)),
                )
                tolerance = self.settings.tolerance("post_oracle")
            else:
                continue
            numeric = solve(model, init, cfg)
            exact = sample_trajectory(model, init, t_end, cfg.n_steps // cfg.save_every, Picture.INTERACTION)
            deviation = compare(exact, numeric)
            results.append(at_most(
                f"{model.kind.value} oracle {_rate_label(model)}", deviation.max_abs, tolerance,
                detail=f"worst at t={deviation.at_time:.4g}",
            ))
        return results

    def check_trace_drift(self) -> List[CheckResult]:
        if not self._trace_drifts:
            return [CheckResult("trace drift", CheckStatus.INFO, float("nan"), None, "no linear oracle runs")]
        return [at_most("trace drift", max(self._trace_drifts), self.settings.tolerance("trace_drift"))]

    def check_rk4_order(self) -> List[CheckResult]:
        order = rk4_order(
            1.0,
            BlochState(theta=math.pi / 2),
            float(self.settings.grid("rk4_order_t_end")),
            float(self.settings.grid("rk4_order_dt")),
        )
        return [at_least("rk4 halving error ratio", 2.0 ** order, self.settings.tolerance("rk4_min_ratio"),
                         detail=f"order {order:.2f}")]

    # ------------------------------------------------------------ closed forms

    def check_xi_special_values(self) -> List[CheckResult]:
        tolerance = self.settings.tolerance("xi_special_value")
        two_over_e = 2.0 * math.exp(-1.0)
        start = max(
            max(abs(xi_memory(r, 0.0) - 1.0), abs(xi_post(r, 0.0) - 1.0))
            for r in (0.0, 0.1, 0.25, 0.5, 1.0, 2.5, 10.0)
        )
        return [
            at_most("xi_memory critical R=0.25 tau=2", abs(xi_memory(0.25, 2.0) - two_over_e), tolerance),
            at_most("xi_post critical R=1 tau=1", abs(xi_post(1.0, 1.0) - two_over_e), tolerance),
            at_most("xi at tau=0", start, tolerance),
        ]

    def check_xi_limits(self) -> List[CheckResult]:
        tau = np.linspace(0.0, 20.0, 2001)
        continuity = max(
            float(np.max(np.abs(xi_memory(0.25 + shift, tau) - xi_memory(0.25, tau))))
            for shift in (-1e-6, 1e-6)
        )
        short = np.linspace(0.0, 10.0, 1001)
        markovian_limit = max(
            float(np.max(np.abs(xi_memory(0.01, short) - np.exp(-0.01 * short)))),
            float(np.max(np.abs(xi_post(0.01, short) - np.exp(-0.01 * short)))),
        )
        kinship = max(
            float(np.max(np.abs(xi_post(r, short) - xi_memory(r, short))))
            for r in (0.005, 0.01, 0.02, 0.05)
        )
        return [
            at_most("xi_memory continuity at R=0.25", continuity, self.settings.tolerance("branch_continuity")),
            at_most("xi markovian limit R=0.01", markovian_limit, self.settings.tolerance("markovian_limit")),
            at_most("xi_memory vs xi_post R<=0.05", kinship, self.settings.tolerance("xi_kinship")),
        ]

    # ------------------------------------------------------------------ phase

    def check_path_agreement(self) -> List[CheckResult]:
        tolerance = self.settings.tolerance("path_agreement")
        quadrature = QuadratureConfig()
        worst: Dict[ModelKind, float] = {}
        for model in self.figure_models():
            for theta in self.oracle_thetas:
                closed = phase_closed(model, theta, quadrature)
                traj = sample_trajectory(model, BlochState(theta=theta), model.period, quadrature.steps)
                general = phase_general(traj, quadrature)
                gap = max(phase_gap(closed.principal, general.principal), abs(closed.unwrapped - general.unwrapped))
                worst[model.kind] = max(worst.get(model.kind, 0.0), gap)
        return [at_most(f"path agreement {kind.value}", value, tolerance) for kind, value in worst.items()]

    def check_quadrature_convergence(self) -> List[CheckResult]:
        coarse_cfg, fine_cfg = QuadratureConfig(steps=2000), QuadratureConfig(steps=4000)
        worst = 0.0
        for model in self.figure_models():
            for theta in self.oracle_thetas:
                coarse = phase_closed(model, theta, coarse_cfg)
                fine = phase_closed(model, theta, fine_cfg)
                worst = max(worst, phase_gap(coarse.principal, fine.principal))
        return [at_most("quadrature 2000 vs 4000 steps", worst, self.settings.tolerance("quadrature_convergence"))]

    def check_unitary_limit(self) -> List[CheckResult]:
        rate = float(self.settings.grid("unitary_rate"))
        models = [
            MarkovianProjection(gamma2=rate),
            CorrelatedProjection(gamma=rate),
            MemoryKernel(gamma0=rate, gamma=1.0),
            PostMarkovian(gamma0=rate, gamma=1.0),
        ]
        worst_phase = 0.0
        worst_visibility = 0.0
        for theta in self.settings.angles("unitary_thetas"):
            expected = fold_phase(-math.pi * (1.0 - math.cos(theta)))
            for model in models:
                result = phase_closed(model, theta)
                worst_phase = max(worst_phase, phase_gap(result.principal, expected))
                worst_visibility = max(worst_visibility, abs(1.0 - result.visibility))
            free = sample_trajectory(MarkovianProjection(gamma2=0.0), BlochState(theta=theta), 2.0 * math.pi, 2000)
            general = phase_general(free)
            worst_phase = max(worst_phase, phase_gap(general.principal, expected))
            worst_visibility = max(worst_visibility, abs(1.0 - general.visibility))
        return [
            at_most("unitary limit phase", worst_phase, self.settings.tolerance("unitary_limit")),
            at_most("unitary limit visibility", worst_visibility, self.settings.tolerance("unitary_visibility")),
        ]

    def check_degenerate_theta(self) -> List[CheckResult]:
        worst = 0.0
        for model in self.figure_models():
            result = phase_closed(model, 0.0)
            worst = max(worst, abs(result.principal), abs(result.unwrapped))
        return [at_most("theta=0 phase is exactly zero", worst, 0.0)]

    def check_theta_pi_limit(self) -> List[CheckResult]:
        theta = self.settings.angle("near_pi_theta")
        worst = 0.0
        for model in self.figure_models():
            worst = max(worst, phase_gap(phase_closed(model, theta).principal, 0.0) / math.pi)
        return [at_most(f"|phase|/pi at theta={theta / math.pi:.3f}pi", worst, self.settings.tolerance("theta_pi_limit"))]

    # ------------------------------------------------------- figure claims

    @staticmethod
    def _row_gaps(a: Sequence[SweepRow], b: Sequence[SweepRow]) -> np.ndarray:
        return phase_gap(principal_column(a), principal_column(b), period=2.0)

    def check_fig2_claims(self) -> List[CheckResult]:
        top_m, top_c = self.sweep("fig2_top", "markovian"), self.sweep("fig2_top", "correlated")
        thetas = np.array([row.theta for row in top_m])
        upper_half = thetas > 0.5 * math.pi
        similarity = float(np.max(self._row_gaps(top_m, top_c)[upper_half]))

        contrast_theta = self.settings.angle("fig2_contrast_theta")
        gaps = {}
        for name in ("fig2_top", "fig2_bottom"):
            dataset = find_dataset(self.datasets, name)
            m = phase_closed(dataset.curve("markovian").model, contrast_theta)
            c = phase_closed(dataset.curve("correlated").model, contrast_theta)
            gaps[name] = phase_gap(m.principal, c.principal) / math.pi
        contrast = gaps["fig2_bottom"] / gaps["fig2_top"] if gaps["fig2_top"] > 0 else float("inf")
        return [
            at_most("fig2 gamma=0.1 similarity for theta>pi/2", similarity, self.settings.tolerance("fig2_similarity")),
            at_least(
                f"fig2 contrast at theta={contrast_theta / math.pi:.2f}pi", contrast, self.settings.tolerance("fig2_contrast_factor"),
                detail=f"gap gamma=1 {gaps['fig2_bottom']:.4f}, gamma=0.1 {gaps['fig2_top']:.4f}",
            ),
        ]

    def _spread(self, dataset_name: str) -> float:
        dataset = find_dataset(self.datasets, dataset_name)
        columns = [self.sweep(dataset_name, curve.name) for curve in dataset.curves]
        worst = 0.0
        for i in range(len(columns)):
            for j in range(i + 1, len(columns)):
                worst = max(worst, float(np.max(self._row_gaps(columns[i], columns[j]))))
        return worst

    def check_kernel_figure_claims(self) -> List[CheckResult]:
        results = []
        for prefix in ("fig3", "fig4"):
            bottom = f"{prefix}_bottom"
            dataset = find_dataset(self.datasets, bottom)
            gamma0 = dataset.curve("gamma_10").model.gamma0
            reference = self.reference_sweep(bottom, MarkovianProjection(gamma2=gamma0))
            near = float(np.max(self._row_gaps(self.sweep(bottom, "gamma_10"), reference)))
            far = float(np.max(self._row_gaps(self.sweep(bottom, "gamma_0.1"), reference)))
            results.append(CheckResult(
                f"{bottom} gamma=10 closer to markovian than gamma=0.1",
                CheckStatus.PASS if near < far else CheckStatus.FAIL,
                near, far,
            ))

            top_spread = self._spread(f"{prefix}_top")
            results.append(CheckResult(
                f"{prefix}_top spread of the three curves",
                CheckStatus.INFO, top_spread, self.settings.tolerance("fig3_spread"),
                detail="within limit" if top_spread <= self.settings.tolerance("fig3_spread") else "exceeds limit",
            ))
            if prefix == "fig3":
                bottom_spread = self._spread(bottom)
                results.append(at_most("fig3 spread gamma0=0.1 below gamma0=1", top_spread, bottom_spread))
        return results

    def check_phase_kinship(self) -> List[CheckResult]:
        memory = self.sweep("fig3_top", "gamma_10")
        post = self.sweep("fig4_top", "gamma_10")
        worst = float(np.max(self._row_gaps(memory, post)))
        return [at_most("memory vs post phase R=0.01", worst, self.settings.tolerance("phase_kinship"))]

    def check_visibility_bound(self) -> List[CheckResult]:
        worst = 0.0
        for dataset in self.datasets:
            for curve in dataset.curves:
                worst = max(worst, max(row.result.visibility for row in self.sweep(dataset.name, curve.name)))
        return [at_most("visibility <= 1", worst, 1.0 + 1e-9)]

    # -------------------------------------------------------------- dynamics

    def check_short_time(self) -> List[CheckResult]:
        samples = int(self.settings.grid("short_time_samples"))
        worst = 0.0
        for rate in self.settings.numbers("correlated_rates"):
            times = np.linspace(0.0, 0.1 / rate, samples)[1:]
            markovian = np.asarray(population_decay(MarkovianProjection(gamma2=rate), times))
            correlated = np.asarray(population_decay(CorrelatedProjection(gamma=rate), times))
            for theta in self.oracle_thetas:
                weight = BlochState(theta=theta).cos_half ** 2
                ratio = weight * np.abs(markovian - correlated) / (rate * times) ** 2
                worst = max(worst, float(np.max(ratio)))
        return [at_most("short-time |drho11| / (gamma t)^2", worst, self.settings.tolerance("short_time_factor"))]

    def check_positivity(self) -> List[CheckResult]:
        results = []
        samples = int(self.settings.grid("positivity_time_samples"))
        dataset = self.datasets[0]
        count = QUICK_FIGURE_POINTS if self.quick else dataset.theta_count
        thetas = np.linspace(dataset.theta_start, dataset.theta_end, count)
        for model in self.figure_models():
            times = np.linspace(0.0, self.oracle_periods * model.period, samples)
            violations = positivity_scan(model, thetas, times)
            name = f"positivity {model.kind.value} {_rate_label(model)}"
            if isinstance(model, MemoryKernel):
                worst = min((v[2] for v in violations), default=0.0)
                results.append(CheckResult(
                    name, CheckStatus.INFO, float(len(violations)), None,
                    detail=f"{len(violations)} violations, min eigenvalue {worst:.3e}",
                ))
            else:
                results.append(at_most(name, float(len(violations)), 0.0))
        return results
