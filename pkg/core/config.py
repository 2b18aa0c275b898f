import os
from pydantic_settings import BaseSettings
from dotenv import load_dotenv

# Load overrides from a local .env file
load_dotenv()


class Settings(BaseSettings):
    tower_path: str = os.getenv("TWISTALG_TOWER_PATH", "")
    m_bound: int = int(os.getenv("TWISTALG_M_BOUND", "12"))
    root_of_unity_bound: int = int(os.getenv("TWISTALG_ROOT_OF_UNITY_BOUND", "12"))
    curve_sample_count: int = int(os.getenv("TWISTALG_CURVE_SAMPLES", "22"))  # 12 for fitting, 10 held out
    param_sample_count: int = int(os.getenv("TWISTALG_PARAM_SAMPLES", "8"))
    max_truncation_degree: int = int(os.getenv("TWISTALG_MAX_TRUNCATION_DEGREE", "6"))
    default_seed: int = int(os.getenv("TWISTALG_SEED", "0"))
    pslq_precision: int = int(os.getenv("TWISTALG_PSLQ_DPS", "60"))
    log_level: str = os.getenv("TWISTALG_LOG_LEVEL", "INFO")

    @property
    def tower_dirs(self) -> list:
        """Directories searched for tower files, builtin towers last."""
        extra = [p for p in self.tower_path.split(os.pathsep) if p]
        builtin = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "towers")
        return extra + [builtin]


settings = Settings()
