"""Standard output envelope and report models for all dctnet operations."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, Field, computed_field


class CommandResult(BaseModel):
    """Standard output envelope for all dctnet operations.

    Every command returns this structure, ensuring consistent JSON output
    with {success, result, errors, duration_ms}.
    """

    success: bool
    result: Any = None
    errors: list[str] = Field(default_factory=list)
    duration_ms: int = 0

    def to_json(self) -> str:
        """Serialize to indented JSON string."""
        return self.model_dump_json(indent=2)

    @classmethod
    def error(cls, message: str, duration_ms: int = 0, result: Any = None) -> CommandResult:
        """Create an error result."""
        return cls(
            success=False,
            result=result,
            errors=[message],
            duration_ms=duration_ms,
        )

    @classmethod
    def ok(cls, result: Any, duration_ms: int = 0) -> CommandResult:
        """Create a success result."""
        return cls(
            success=True,
            result=result,
            duration_ms=duration_ms,
        )


# ── KLT verification report ──────────────────────────────────────


class KltRow(BaseModel):
    """Per-index comparison between the Markov KLT and the DCT basis."""

    n: int
    omega: float
    lambda_formula: float
    lambda_numeric: float
    cos_similarity: float


class KltReport(BaseModel):
    """Numerical verification of the KLT -> DCT convergence for one model."""

    r: float
    length: int
    numerator_match: str
    printed_relative_error: float
    standard_relative_error: float
    min_cos: float
    mean_cos: float
    eigenvalues_decreasing: bool
    order_consistent: bool
    max_closed_form_residual: float
    lambda0_numeric: float
    lambda0_over_length: float
    rows: list[KltRow] = []

    def to_csv(self) -> str:
        lines = ["n,omega,lambda_formula,lambda_numeric,cos_similarity"]
        for row in self.rows:
            lines.append(
                f"{row.n},{row.omega!r},{row.lambda_formula!r},{row.lambda_numeric!r},{row.cos_similarity!r}"
            )
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = [
            f"Markov model: r={self.r} N={self.length}",
            f"Eigenvalue numerator validated by eigensolver: {self.numerator_match}",
            f"  max relative error, '1 - r' form:   {self.printed_relative_error:.3e}",
            f"  max relative error, '1 - r^2' form: {self.standard_relative_error:.3e}",
            f"Eigenvalues strictly decreasing in frequency: {self.eigenvalues_decreasing}",
            f"Eigenvalue rank order equals frequency order: {self.order_consistent}",
            f"Max closed-form eigenvector residual: {self.max_closed_form_residual:.3e}",
            f"Largest eigenvalue: {self.lambda0_numeric:.6g} ({self.lambda0_over_length:.6f} x N)",
            f"|cos| KLT vs DCT: min={self.min_cos:.6f} mean={self.mean_cos:.6f}",
            "",
            f"{'n':>4} {'omega':>12} {'lambda_formula':>16} {'lambda_numeric':>16} {'|cos|':>10}",
        ]
        for row in self.rows:
            lines.append(
                f"{row.n:>4} {row.omega:>12.6f} {row.lambda_formula:>16.8g} "
                f"{row.lambda_numeric:>16.8g} {row.cos_similarity:>10.6f}"
            )
        return "\n".join(lines) + "\n"


# ── Identification report ────────────────────────────────────────


class GroupRate(BaseModel):
    """Rank-1 result for one probe group."""

    group: str
    n_probes: int
    n_correct: int

    @computed_field  # type: ignore[prop-decorator]
    @property
    def rate_percent(self) -> float:
        """Rank-1 recognition rate in percent."""
        if self.n_probes > 0:
            return self.n_correct / self.n_probes * 100
        return 0.0


class EvalReport(BaseModel):
    """Per-group rank-1 rates and their group-mean average."""

    groups: list[GroupRate] = []
    n_gallery: int = 0
    failures: list[str] = []
    config: dict[str, Any] = {}

    @computed_field  # type: ignore[prop-decorator]
    @property
    def average(self) -> float:
        """Mean of the per-group rates (table convention, not per-probe)."""
        if self.groups:
            return sum(g.rate_percent for g in self.groups) / len(self.groups)
        return 0.0

    def to_csv(self) -> str:
        lines = ["group,rate_percent,n_probes"]
        for g in self.groups:
            lines.append(f"{g.group},{g.rate_percent:.4f},{g.n_probes}")
        lines.append(f"Avg,{self.average:.4f},{sum(g.n_probes for g in self.groups)}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        width = max([len("Group"), len("Avg")] + [len(g.group) for g in self.groups])
        lines = [f"{'Group':<{width}}  {'Rate (%)':>9}  {'Probes':>7}"]
        for g in self.groups:
            lines.append(f"{g.group:<{width}}  {g.rate_percent:>9.3f}  {g.n_probes:>7}")
        lines.append(f"{'Avg':<{width}}  {self.average:>9.3f}  {sum(g.n_probes for g in self.groups):>7}")
        if self.failures:
            lines.append("")
            lines.append(f"Extraction failures: {len(self.failures)}")
            lines.extend(f"  - {f}" for f in self.failures)
        return "\n".join(lines) + "\n"
