from functools import lru_cache
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()

BUNDLED_PRESET_DIR = Path(__file__).parent / "presets"


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="AERPROV_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    log_level: str = "INFO"
    default_seed: int = 42

    # 🔋 Catalog defaults that are not published values, see battery/repository.py
    lto_nominal_voltage_v: float = 2.4
    cycle_warning_fraction: float = 0.8

    # 🗂️ Read from AERPROV_PRESET_DIR, check the preset_dir property below
    preset_dir_override: Optional[Path] = Field(default=None, validation_alias="AERPROV_PRESET_DIR")

    @property
    def preset_dir(self) -> Path:
        """Directory presets are read from; AERPROV_PRESET_DIR wins over the bundled one."""
        if self.preset_dir_override is not None:
            return self.preset_dir_override
        return BUNDLED_PRESET_DIR


@lru_cache
def get_settings() -> Settings:
    return Settings()
