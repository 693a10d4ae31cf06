from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """Outcome of an exhaustive exact check; truthy iff it passed."""

    name: str
    passed: bool
    witness: dict | None = None
    checked: int = 0
    notes: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.passed

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        text = f"{self.name}: {status}"
        if self.witness:
            text += f"  witness={_fmt(self.witness)}"
        return text


def _fmt(obj):
    from .exact import Fraction, GaussianRational, format_scalar

    if isinstance(obj, (Fraction, GaussianRational)):
        return format_scalar(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{k}: {_fmt(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "(" + ", ".join(_fmt(v) for v in obj) + ")"
    return str(obj)


def jsonable(obj):
    """Convert nested report data to JSON-safe values (scalars as p/q strings)."""
    from .exact import Fraction, GaussianRational, format_scalar

    if isinstance(obj, (Fraction, GaussianRational)):
        return format_scalar(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj
