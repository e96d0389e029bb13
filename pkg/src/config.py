"""
Configuration Manager for the Figurate Toolkit
"""
import os
import json
import logging
from typing import Any, Dict, Optional
from pathlib import Path
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("text", "json", "csv")

DEFAULT_LIMITS: Dict[str, int] = {
    "sweep_cap": 500,
    "decompose_cap": 10_000_000,
    "enum_cap": 12,
    "count_cap": 5000,
    "four_cube_rank_cap": 1000,
    "gen_cap": 100_000,
}


class Config:
    """Configuration manager"""

    def __init__(self, env_file: Optional[str] = None, config_dir: Optional[Path] = None):
        # Load environment variables
        load_dotenv(env_file)

        # Output
        self.OUTPUT_FORMAT = self._parse_format(self._get_env("FIGURATE_OUTPUT_FORMAT", "text"))

        # Logging
        self.LOG_LEVEL = self._get_env("FIGURATE_LOG_LEVEL", "WARNING").upper()
        self.LOG_FILE = self._get_env("FIGURATE_LOG_FILE", "") or None

        # Sweeps
        self.SWEEP_DEFAULT = self._get_int("FIGURATE_SWEEP_DEFAULT", 100)

        # Paths
        self.BASE_DIR = Path(__file__).parent.parent
        self.CONFIG_DIR = config_dir or self.BASE_DIR / "config"

        # Load JSON configs
        self._load_configs()

    def _get_env(self, key: str, default: str = "") -> str:
        """Get environment variable"""
        value = os.getenv(key, default)
        if value is None:
            return default
        return value.strip()

    def _get_int(self, key: str, default: int) -> int:
        """Get integer environment variable"""
        raw = self._get_env(key, str(default))
        try:
            return int(raw)
        except ValueError:
            logger.warning(f"⚠️ {key}={raw!r} is not an integer, using {default}")
            return default

    def _parse_format(self, value: str) -> str:
        """Normalize the default output format"""
        value = value.lower()
        if value not in OUTPUT_FORMATS:
            logger.warning(f"⚠️ Unknown output format {value!r}, falling back to text")
            return "text"
        return value

    def _load_configs(self):
        """Load JSON configuration files"""
        limits = self._load_json("limits.json", {})
        self.limits = dict(DEFAULT_LIMITS)
        for key, value in limits.items():
            if key in DEFAULT_LIMITS and isinstance(value, int) and value > 0:
                self.limits[key] = value
            else:
                logger.warning(f"⚠️ Ignoring limit {key}={value!r}")

    def _load_json(self, filename: str, default: Any) -> Any:
        """Load JSON file"""
        filepath = self.CONFIG_DIR / filename
        try:
            if filepath.exists():
                with open(filepath, "r", encoding="utf-8") as f:
                    return json.load(f)
        except Exception as e:
            logger.error(f"❌ Error loading {filename}: {e}")
        return default

    def limit(self, name: str) -> int:
        """Get a hard cap by name"""
        return self.limits[name]
