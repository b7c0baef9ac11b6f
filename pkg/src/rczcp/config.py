"""Construction job files and run settings."""

from __future__ import annotations

from pathlib import Path
from typing import Any, get_args

import yaml

from rczcp.boolean import MAX_VARIABLES
from rczcp.construction import ConstructionParams, Partition2
from rczcp.correlation import DEFAULT_TOLERANCE, ZeroTest
from rczcp.enumeration import DEFAULT_SEED

_REQUIRED_JOB_FIELDS = ("n", "nu", "pi", "k1", "k2", "r1", "r2")


class RunConfig:
    """Settings shared by every command, overridable from the command line."""

    def __init__(
        self,
        tolerance: float = DEFAULT_TOLERANCE,
        zero_test: ZeroTest = "auto",
        seed: int = DEFAULT_SEED,
        max_n: int = MAX_VARIABLES,
        coefficient_cap: int | None = None,
        workers: int = 1,
    ) -> None:
        """Initialize run settings.

        Args:
            tolerance: Magnitude below which a numeric correlation counts as zero
            zero_test: ``auto`` (exact for q <= 64), ``exact`` or ``numeric``
            seed: Seed for census coefficient sampling
            max_n: Largest variable count a sequence may be evaluated for
            coefficient_cap: Coefficient vectors per census slice (None = automatic)
            workers: Worker processes for census and search
        """
        if tolerance <= 0:
            raise ValueError(f"tolerance must be positive, got {tolerance}")
        if zero_test not in get_args(ZeroTest):
            raise ValueError(f"zero_test must be auto, exact or numeric, got '{zero_test}'")
        if workers < 1:
            raise ValueError(f"workers must be at least 1, got {workers}")
        if max_n < 4:
            raise ValueError(f"max_n must be at least 4, got {max_n}")
        if coefficient_cap is not None and coefficient_cap < 1:
            raise ValueError(f"coefficient_cap must be at least 1, got {coefficient_cap}")
        self.tolerance = tolerance
        self.zero_test: ZeroTest = zero_test
        self.seed = seed
        self.max_n = max_n
        self.coefficient_cap = coefficient_cap
        self.workers = workers

    def override(self, **values: Any) -> RunConfig:
        """Copy with every non-None keyword replacing the stored setting."""
        current = self.to_dict()
        current.update({k: v for k, v in values.items() if v is not None})
        return RunConfig(**current)

    def to_dict(self) -> dict[str, Any]:
        return {
            "tolerance": self.tolerance,
            "zero_test": self.zero_test,
            "seed": self.seed,
            "max_n": self.max_n,
            "coefficient_cap": self.coefficient_cap,
            "workers": self.workers,
        }


class ConstructionJob:
    """A named parameter set for the construction."""

    def __init__(
        self,
        name: str,
        n: int,
        nu: int,
        pi: list[int],
        k1: int,
        k2: int,
        r1: list[int],
        r2: list[int],
        coefficients: list[int] | None = None,
    ) -> None:
        """Initialize a construction job.

        Args:
            name: Name of the job
            n: Number of variables
            nu: Truncation parameter
            pi: Permutation of 1..n-2 as one-based images
            k1: Root order of the first block
            k2: Root order of the second block
            r1: Variables in the first block
            r2: Variables in the second block
            coefficients: c_0..c_{n-1} (all zero if None)
        """
        self.name = name
        self.n = n
        self.nu = nu
        self.pi = pi
        self.k1 = k1
        self.k2 = k2
        self.r1 = r1
        self.r2 = r2
        self.coefficients = coefficients if coefficients is not None else [0] * n

    @classmethod
    def from_params(cls, name: str, params: ConstructionParams) -> ConstructionJob:
        """The job that reproduces ``params``."""
        part = params.partition
        return cls(
            name=name,
            n=params.n,
            nu=params.nu,
            pi=list(params.pi),
            k1=part.k1,
            k2=part.k2,
            r1=sorted(part.r1),
            r2=sorted(part.r2),
            coefficients=list(params.coefficients),
        )

    def to_params(self) -> ConstructionParams:
        """Parameters for :func:`rczcp.construction.construct_rczcp` (not yet validated)."""
        return ConstructionParams(
            n=self.n,
            nu=self.nu,
            pi=tuple(self.pi),
            coefficients=tuple(self.coefficients),
            partition=Partition2.of(self.k1, self.k2, self.r1, self.r2),
        )

    def to_dict(self) -> dict[str, Any]:
        """YAML form of the job, without its name."""
        return {
            "n": self.n,
            "nu": self.nu,
            "pi": list(self.pi),
            "k1": self.k1,
            "k2": self.k2,
            "r1": list(self.r1),
            "r2": list(self.r2),
            "coefficients": list(self.coefficients),
        }


class RczcpConfig:
    """A job file: optional run settings plus named construction jobs."""

    def __init__(
        self, jobs: dict[str, ConstructionJob], settings: RunConfig | None = None
    ) -> None:
        self.jobs = jobs
        self.settings = settings or RunConfig()

    def get_job(self, name: str) -> ConstructionJob | None:
        """Get a job by name, or None."""
        return self.jobs.get(name)

    def get_job_or_auto_detect(
        self, name: str | None = None
    ) -> tuple[ConstructionJob, str] | None:
        """Get a job by name, or the only job when no name is given.

        Returns:
            Tuple of (ConstructionJob, job_name) if found/detected, None otherwise

        Raises:
            ValueError: If name is None and the file holds several jobs
        """
        if name is not None:
            job = self.jobs.get(name)
            return (job, name) if job else None

        if not self.jobs:
            return None

        if len(self.jobs) == 1:
            job_name = next(iter(self.jobs))
            return (self.jobs[job_name], job_name)

        raise ValueError(
            f"Config contains {len(self.jobs)} jobs. "
            "Please specify --job to select which one to use."
        )

    @classmethod
    def from_yaml(cls, config_path: Path) -> RczcpConfig:
        """Load a job file.

        Either section may be left out, so a file can carry only settings
        for the census, verify and search commands.

        Example YAML structure:
            settings:          # Optional
              tolerance: 1.0e-6
              zero_test: auto
              seed: 2023
            jobs:
              example1:
                n: 5
                nu: 1
                pi: [1, 3, 2]
                k1: 2
                k2: 3
                r1: [1, 4]
                r2: [2, 3, 5]
                coefficients: [4, 2, 3, 0, 5]   # Optional, c_0..c_{n-1}

        Raises:
            FileNotFoundError: If the file doesn't exist
            ValueError: If the file is invalid
        """
        if not config_path.exists():
            raise FileNotFoundError(f"Config file not found: {config_path}")

        with open(config_path, encoding="utf-8") as f:
            data = yaml.safe_load(f)

        if not isinstance(data, dict) or not {"jobs", "settings"} & set(data):
            raise ValueError("Config file must contain a 'jobs' or 'settings' section")
        jobs_data = data.get("jobs") or {}
        if not isinstance(jobs_data, dict):
            raise ValueError("'jobs' section must be a mapping of job name to parameters")

        settings_data = data.get("settings") or {}
        if not isinstance(settings_data, dict):
            raise ValueError("'settings' section must be a mapping")
        unknown = set(settings_data) - set(RunConfig().to_dict())
        if unknown:
            raise ValueError(f"Unknown settings: {sorted(unknown)}")

        jobs = {name: cls._parse_job(name, job) for name, job in jobs_data.items()}
        return cls(jobs=jobs, settings=RunConfig(**settings_data))

    @staticmethod
    def _int_list(name: str, key: str, value: Any) -> list[int]:
        if not isinstance(value, list) or not all(isinstance(v, int) for v in value):
            raise ValueError(f"Job '{name}' field '{key}' must be a list of integers")
        return list(value)

    @staticmethod
    def _parse_job(name: str, job_data: Any) -> ConstructionJob:
        """Parse one job.

        Raises:
            ValueError: If a field is missing or has the wrong type
        """
        if not isinstance(job_data, dict):
            raise ValueError(f"Job '{name}' must be a mapping")
        for key in _REQUIRED_JOB_FIELDS:
            if key not in job_data:
                raise ValueError(f"Job '{name}' missing '{key}'")
        for key in ("n", "nu", "k1", "k2"):
            if not isinstance(job_data[key], int):
                raise ValueError(f"Job '{name}' field '{key}' must be an integer")

        coefficients = None
        if job_data.get("coefficients") is not None:
            coefficients = RczcpConfig._int_list(name, "coefficients", job_data["coefficients"])

        return ConstructionJob(
            name=name,
            n=job_data["n"],
            nu=job_data["nu"],
            pi=RczcpConfig._int_list(name, "pi", job_data["pi"]),
            k1=job_data["k1"],
            k2=job_data["k2"],
            r1=RczcpConfig._int_list(name, "r1", job_data["r1"]),
            r2=RczcpConfig._int_list(name, "r2", job_data["r2"]),
            coefficients=coefficients,
        )

    def add_or_update_job(self, job: ConstructionJob, force: bool = False) -> bool:
        """Store ``job`` under its name.

        Returns:
            True when a job of that name was replaced

        Raises:
            ValueError: If a job of that name exists and ``force`` is not set
        """
        replaced = job.name in self.jobs
        if replaced and not force:
            raise ValueError(f"Job '{job.name}' already exists; pass --force to replace it")
        self.jobs[job.name] = job
        return replaced

    def to_yaml_dict(self) -> dict[str, Any]:
        """Dictionary form suitable for YAML serialization."""
        result: dict[str, Any] = {}
        # Only non-default settings are written back
        defaults = RunConfig().to_dict()
        changed = {k: v for k, v in self.settings.to_dict().items() if defaults[k] != v}
        if changed:
            result["settings"] = changed
        result["jobs"] = {name: job.to_dict() for name, job in self.jobs.items()}
        return result

    def save_to_yaml(self, config_path: Path) -> None:
        """Save the configuration to a YAML file."""
        with open(config_path, "w", encoding="utf-8") as f:
            yaml.dump(self.to_yaml_dict(), f, default_flow_style=False, sort_keys=False)
