"""
Configuration Settings for svdc
Central configuration for the SVD codec, the quality metrics and the CLI
"""

import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

from dotenv import dotenv_values

# Optional project configuration file; the process environment is never read
PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent
CONFIG_FILE = PROJECT_ROOT / "svdc.env"


def _read_file(path: Optional[Union[str, Path]]) -> Dict[str, str]:
    """Read key=value pairs from a dotenv-style file, empty if missing."""
    if path is None or not Path(path).exists():
        return {}
    return {k: v for k, v in dotenv_values(path).items() if v is not None}


def _build(values: Dict[str, str]) -> Dict[str, Any]:
    """Build the configuration dictionaries from raw file values."""
    svd_config = {
        "tolerance": float(values.get("SVD_TOLERANCE", "1e-12")),  # Jacobi off-diagonal criterion, relative
        "max_sweeps": int(values.get("SVD_MAX_SWEEPS", "60")),
        "rank_tolerance": float(values.get("SVD_RANK_TOLERANCE", "1e-12"))  # sigma_i <= tol * sigma_1 counts as zero
    }

    ssim_config = {
        "k1": float(values.get("SSIM_K1", "0.01")),
        "k2": float(values.get("SSIM_K2", "0.03")),
        "dynamic_range": float(values.get("SSIM_DYNAMIC_RANGE", "255")),
        "mode": values.get("SSIM_MODE", "windowed").lower(),
        "window_size": int(values.get("SSIM_WINDOW_SIZE", "11")),
        "window_sigma": float(values.get("SSIM_WINDOW_SIGMA", "1.5"))
    }

    codec_config = {
        "magic": b"SVDC",
        "version": 1,
        "default_precision": values.get("CODEC_DEFAULT_PRECISION", "f32").lower(),
        "pixel_min": 0,
        "pixel_max": 255
    }

    # Lower bounds of the 99 / 999 / 9999 appreciation zones
    zone_config = {
        "poor": 0.99,
        "good": 0.999,
        "very_good": 0.9999
    }

    sweep_config = {
        "default_start": int(values.get("SWEEP_START", "8")),
        "default_stop": int(values.get("SWEEP_STOP", "448")),
        "default_step": int(values.get("SWEEP_STEP", "8")),
        "max_parallel": int(values.get("SWEEP_MAX_PARALLEL", "4"))  # concurrent k evaluations
    }

    log_config = {
        "level": values.get("LOG_LEVEL", "WARNING").upper(),
        "format": "[%(name)s] %(message)s"
    }

    return {
        "svd_config": svd_config,
        "ssim_config": ssim_config,
        "codec_config": codec_config,
        "zone_config": zone_config,
        "sweep_config": sweep_config,
        "log_config": log_config
    }


def load_settings(path: Optional[Union[str, Path]] = CONFIG_FILE) -> Dict[str, Any]:
    """Load the configuration from a settings file (defaults where keys are absent)."""
    return _build(_read_file(path))


_ACTIVE = load_settings()

SVD_CONFIG = _ACTIVE["svd_config"]
SSIM_CONFIG = _ACTIVE["ssim_config"]
CODEC_CONFIG = _ACTIVE["codec_config"]
ZONE_CONFIG = _ACTIVE["zone_config"]
SWEEP_CONFIG = _ACTIVE["sweep_config"]
LOG_CONFIG = _ACTIVE["log_config"]


def get_config() -> Dict[str, Any]:
    """Get the complete configuration as a dictionary."""
    return {
        "svd_config": SVD_CONFIG,
        "ssim_config": SSIM_CONFIG,
        "codec_config": CODEC_CONFIG,
        "zone_config": ZONE_CONFIG,
        "sweep_config": SWEEP_CONFIG,
        "log_config": LOG_CONFIG
    }


if __name__ == "__main__":
    # Print configuration for debugging
    config = get_config()
    config["codec_config"] = dict(config["codec_config"], magic=CODEC_CONFIG["magic"].decode("ascii"))
    print(json.dumps(config, indent=2))
