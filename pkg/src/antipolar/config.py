import os
import logging
from typing import Literal

from dotenv import find_dotenv, load_dotenv
from pydantic import BaseModel, ConfigDict, Field

logger = logging.getLogger(__name__)

ENV_PREFIX = "ANTIPOLAR_"


class ToleranceConfig(BaseModel):
    """
    Numerical tolerances used across the pipeline.

    Attributes:
        eps_unit: slack on |p| = 1 and minimum separation of distinct points.
        eps_geom: coplanarity / incidence slack for hull facets and merging.
        eps_diam: absolute slack on Euclidean distance for diameter-graph edges.
        eps_polar: residual bound for the anti-self-polar certificate.
    """

    model_config = ConfigDict(frozen=True)

    eps_unit: float = Field(default=1e-9, gt=0, lt=1e-2)
    eps_geom: float = Field(default=1e-9, gt=0, lt=1e-2)
    eps_diam: float = Field(default=1e-9, gt=0, lt=1e-2)
    eps_polar: float = Field(default=1e-9, gt=0, lt=1e-2)

    @staticmethod
    def catalog() -> "ToleranceConfig":
        """Tight tolerances for exact catalog coordinates and random test hulls."""
        return ToleranceConfig()

    @staticmethod
    def flow() -> "ToleranceConfig":
        """Looser tolerances for configurations produced by the diameter flow."""
        return ToleranceConfig(eps_unit=1e-8, eps_geom=1e-6, eps_diam=1e-6, eps_polar=1e-5)


PRESETS = {
    "catalog": ToleranceConfig.catalog,
    "flow": ToleranceConfig.flow,
}


def load_tolerances(
    preset: Literal["catalog", "flow"] = "catalog", **overrides: float
) -> ToleranceConfig:
    """
    Builds a ToleranceConfig from a preset, then environment variables
    (ANTIPOLAR_EPS_GEOM, ...; a .env file is honoured), then explicit overrides.
    Overrides that are None are ignored so argparse namespaces can be passed through.
    """
    load_dotenv(find_dotenv(usecwd=True))

    values = PRESETS[preset]().model_dump()
    for key in values:
        env_value = os.environ.get(ENV_PREFIX + key.upper())
        if env_value is not None:
            values[key] = float(env_value)
            logger.debug(f"tolerance {key}={env_value} taken from environment")

    values.update({k: v for k, v in overrides.items() if v is not None and k in values})
    return ToleranceConfig(**values)
