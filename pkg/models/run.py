"""
DUALFRENET Run Configuration
Validated command-line request handed to the CLI dispatcher.
"""

import os
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional, Tuple

import config
from core.errors import InputError
from models.tolerances import Tolerances

COMMANDS = (
    "frenet",
    "classify",
    "mannheim-generate",
    "mannheim-verify",
    "study",
    "ruled-export",
    "selftest",
)


@dataclass
class RunConfig:
    """One CLI invocation: command, paths, tolerance overrides and grid parameters."""
    command: str
    input: Optional[str] = None
    output: Optional[str] = None
    tol_thm: Optional[float] = None
    tol_pair: Optional[float] = None
    step: Optional[float] = None
    samples: Optional[int] = None
    u_range: Tuple[float, float] = (-1.0, 1.0)
    u_samples: int = config.MESH_U_SAMPLES
    parallel: bool = False
    seed: int = 0
    json_output: bool = False
    no_banner: bool = False

    @classmethod
    def from_args(cls, args: Any) -> "RunConfig":
        return cls(
            command=args.command,
            input=getattr(args, "input", None),
            output=getattr(args, "output", None),
            tol_thm=getattr(args, "tol_thm", None),
            tol_pair=getattr(args, "tol_pair", None),
            step=getattr(args, "step", None),
            samples=getattr(args, "samples", None),
            u_range=tuple(getattr(args, "u_range", None) or (-1.0, 1.0)),
            u_samples=getattr(args, "u_samples", None) or config.MESH_U_SAMPLES,
            parallel=bool(getattr(args, "parallel", False)),
            seed=int(getattr(args, "seed", 0) or 0),
            json_output=bool(getattr(args, "json", False)),
            no_banner=bool(getattr(args, "no_banner", False)),
        )

    def validate(self) -> "RunConfig":
        """Reject bad paths and parameters before any computation starts."""
        if self.command not in COMMANDS:
            raise InputError(f"Unknown command '{self.command}'")
        if self.command != "selftest":
            if not self.input:
                raise InputError(f"'{self.command}' needs --input")
            if not os.path.exists(self.input):
                raise InputError(f"Input not found: {self.input}")
        if self.command == "mannheim-generate" and not self.output:
            raise InputError("'mannheim-generate' needs --output DIR for the pair bundle")
        if self.output and self.command != "mannheim-generate" and os.path.isdir(self.output):
            raise InputError(f"--output must be a file path, got directory {self.output}")
        if self.step is not None and not self.step > 0:
            raise InputError(f"--step must be positive, got {self.step}")
        if self.samples is not None and self.samples < 2:
            raise InputError(f"--samples must be at least 2, got {self.samples}")
        if self.command == "mannheim-verify" and self.samples is not None and self.samples < 5:
            raise InputError("Theorem verification needs --samples of at least 5")
        if not self.u_range[1] > self.u_range[0]:
            raise InputError(f"--u-range must be increasing, got {list(self.u_range)}")
        if self.u_samples < 2:
            raise InputError(f"--u-samples must be at least 2, got {self.u_samples}")
        self.tolerances()
        return self

    def tolerances(self) -> Tolerances:
        try:
            return Tolerances.default().with_overrides(thm=self.tol_thm, pair=self.tol_pair)
        except ValueError as e:
            raise InputError(str(e))

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["u_range"] = list(self.u_range)
        return data
