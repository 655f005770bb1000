"""Per-pair verdicts on small-amplitude asymmetric bifurcation and pair scans."""
from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass, field

from .expansion import (
    SmallDivisorWarning,
    resonance_index,
    resonance_table,
    transversality_jacobian,
)
from .models import (
    KERNEL_RTOL,
    DomainError,
    KernelError,
    KernelSpec,
    get_model,
    verify_kernel_dimension,
)

__all__ = [
    "VERDICTS",
    "BifurcationReport",
    "classify",
    "scan_pairs",
    "report_row",
    "csv_columns",
]

VERDICTS = (
    "no-nontrivial-solutions",
    "symmetric-only",
    "no-asymmetric",
    "candidate-asymmetric",
    "inconclusive",
)
DEFAULT_ZERO_THRESHOLD = 1e-10


@dataclass
class BifurcationReport:
    model: str
    k1: int
    k2: int
    coprime: bool
    order: int
    mu0: dict | None
    kernel_certificate: dict | None
    resonance_nhat: float | None
    zero_threshold: float | None
    C_scaled: float | None
    transversality_det: float | None
    transversality: str | None
    verdict: str
    exploratory: bool = False
    cosine_factorization: bool = False
    diagnostics: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def classify(model, k1: int, k2: int, fixed=None, zero_threshold: float = DEFAULT_ZERO_THRESHOLD,
             k_check: int | None = None, params=None) -> BifurcationReport:
    """Apply the necessary/sufficient case analysis to one wavenumber pair.

    ``zero_threshold`` is relative: ``n_hat`` counts as zero when
    ``|n_hat| <= zero_threshold * max|n_hat|`` over the other entries of the
    same order.
    """
    model = get_model(model)
    k1, k2 = int(k1), int(k2)
    if not 1 <= k1 < k2:
        raise DomainError(f"need 1 <= k1 < k2, got ({k1}, {k2})")
    fixed = {**model.fixed_defaults, **(fixed or {})}
    coprime = math.gcd(k1, k2) == 1
    rep = BifurcationReport(
        model=model.name, k1=k1, k2=k2, coprime=coprime, order=k1 + k2 - 1,
        mu0=None, kernel_certificate=None, resonance_nhat=None, zero_threshold=None,
        C_scaled=None, transversality_det=None, transversality=None, verdict="inconclusive",
        exploratory=model.exploratory, cosine_factorization=coprime and k1 >= 2,
    )
    diag = rep.diagnostics
    if model.exploratory:
        diag.append("exploratory model: symbols extrapolated from the infinite-depth algebra")
    if not coprime:
        diag.append("non-coprime pair: necessary conditions only")
    if k1 == 1:
        diag.append("k1 = 1: sine projections only")

    try:
        mu0 = model.check_params(model.kernel_params(k1, k2, fixed))
    except KernelError as exc:
        diag.append(str(exc))
        rep.verdict = "no-nontrivial-solutions"
        return rep
    cert = verify_kernel_dimension(model, mu0, k1, k2, k_check)
    rep.mu0 = dict(mu0)
    rep.kernel_certificate = asdict(cert)
    tol = KERNEL_RTOL * (1.0 + abs(float(model.symbol(mu0, [1])[0])))
    roots = [res <= tol for res in cert.residuals]
    if not any(roots):
        diag.append("no kernel at (k1, k2)")
        rep.verdict = "no-nontrivial-solutions"
        return rep
    if not all(roots):
        diag.append("two-dimensional kernel")
        rep.verdict = "symmetric-only"
        return rep
    if not cert.passed:
        diag.append(f"kernel not simple: extra zeros at {list(cert.offending)}"
                    if cert.offending else "kernel tail certificate failed")
        rep.verdict = "inconclusive"
        return rep
    ks = KernelSpec(k1=k1, k2=k2, mu0=dict(mu0), coprime=coprime, certificate=cert)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SmallDivisorWarning)
        table = resonance_table(model, ks)
    diag.extend(table.warnings)
    nhat = table.n_hat(*resonance_index(k1, k2))
    scale = table.order_scale(rep.order)
    thr = zero_threshold * scale
    rep.resonance_nhat = nhat
    rep.zero_threshold = thr
    if model.name == "whitham-inf":
        rep.C_scaled = nhat * ks.mu0["T"] ** ((k1 + k2 - 3) / 4.0)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SmallDivisorWarning)
        tdata = transversality_jacobian(model, ks, params)
    if tdata.degenerate:
        rep.transversality = "degenerate-parameters"
    else:
        rep.transversality_det = tdata.det
        rep.transversality = "computed"
        diag.append(f"transversality params {','.join(tdata.params)}; "
                    f"step-halving error {tdata.det_error:.3e}")

    if abs(nhat) > thr:
        rep.verdict = "no-asymmetric"
    elif coprime and k1 >= 2 and not tdata.degenerate and tdata.det not in (None, 0.0):
        rep.verdict = "candidate-asymmetric"
    else:
        rep.verdict = "inconclusive"
        diag.append("resonance coefficient below threshold but sufficiency hypotheses fail")
    return rep


def scan_pairs(model, kmax: int, fixed=None, include_noncoprime: bool = False,
               zero_threshold: float = DEFAULT_ZERO_THRESHOLD) -> list:
    """Classify every pair ``1 <= k1 < k2 <= kmax`` in (k1, k2) order."""
    if kmax < 2:
        raise DomainError("kmax must be at least 2")
    model = get_model(model)
    out = []
    for k1 in range(1, kmax):
        for k2 in range(k1 + 1, kmax + 1):
            if not include_noncoprime and math.gcd(k1, k2) != 1:
                continue
            try:
                out.append(classify(model, k1, k2, fixed, zero_threshold))
            except Exception as exc:  # recorded per pair; a scan never aborts
                out.append(BifurcationReport(
                    model=model.name, k1=k1, k2=k2, coprime=math.gcd(k1, k2) == 1,
                    order=k1 + k2 - 1, mu0=None, kernel_certificate=None, resonance_nhat=None,
                    zero_threshold=None, C_scaled=None, transversality_det=None,
                    transversality=None, verdict="inconclusive", exploratory=model.exploratory,
                    diagnostics=[f"error: {type(exc).__name__}: {exc}"]))
    return out


def csv_columns(model) -> list:
    model = get_model(model)
    return (["model", "k1", "k2", "coprime", "order"]
            + [f"mu0_{p}" for p in model.param_names]
            + ["resonance_nhat", "C_scaled", "transversality_det", "verdict", "diagnostics"])


def report_row(rep: BifurcationReport) -> dict:
    """Flatten a report into the scalar CSV columns (in column order)."""
    model = get_model(rep.model)
    row = {"model": rep.model, "k1": rep.k1, "k2": rep.k2, "coprime": rep.coprime,
           "order": rep.order}
    for p in model.param_names:
        row[f"mu0_{p}"] = None if rep.mu0 is None else rep.mu0[p]
    row["resonance_nhat"] = rep.resonance_nhat
    row["C_scaled"] = rep.C_scaled
    row["transversality_det"] = (rep.transversality_det if rep.transversality != "degenerate-parameters"
                                 else "degenerate-parameters")
    row["verdict"] = rep.verdict
    row["diagnostics"] = "; ".join(rep.diagnostics)
    return row
