from pathlib import Path
from typing import Optional
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

DATA_DIR = Path(__file__).resolve().parents[2] / "data"


# base pydantic settings class
# every field can be overridden with an IMH_ prefixed environment variable
# or a line in .env (e.g. IMH_DEFAULT_WORKERS=4)
class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="IMH_", env_file=".env", extra="ignore")

    LOG_LEVEL: str = "INFO"
    DEFAULT_SEED: int = Field(20100917, ge=0)
    DEFAULT_REPLICATIONS: int = Field(1000, ge=2)
    DEFAULT_WORKERS: int = Field(1, ge=1)
    MLE_TOL: float = Field(1e-8, gt=0)
    MLE_MAX_ITER: int = Field(100, ge=1)
    # 332-row glu,bp,ped,type table shipped with the repo
    PIMA_DATA_PATH: Optional[str] = str(DATA_DIR / "pima_style.csv")


settings = Settings()
