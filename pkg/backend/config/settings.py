from pydantic_settings import BaseSettings
from pathlib import Path
from dotenv import load_dotenv
load_dotenv()
import os

class Settings(BaseSettings):
    # Series evaluation
    DEFAULT_ORDER: int = int(os.getenv("DEFAULT_ORDER", "60"))
    ORACLE_ORDER: int = int(os.getenv("ORACLE_ORDER", "30"))
    PRECISION_ATTEMPTS: int = int(os.getenv("PRECISION_ATTEMPTS", "6"))

    # Verification
    JOBS: int = int(os.getenv("JOBS", "1"))

    # API Configuration
    API_HOST: str = "0.0.0.0"
    API_PORT: int = 8000

    # Data Paths
    CATALOG_DIR: Path = Path(__file__).resolve().parent.parent / "data" / "catalog"
    MANIFEST_FILE: Path = CATALOG_DIR / "manifest.csv"

    # Output
    OUTPUT_DIR: Path = Path("output")
    REPORTS_DIR: Path = OUTPUT_DIR / "reports"
    LOGS_DIR: Path = OUTPUT_DIR / "logs"

    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

    class Config:
        env_file = ".env"

settings = Settings()

# Create directories
for directory in [settings.REPORTS_DIR, settings.LOGS_DIR]:
    directory.mkdir(parents=True, exist_ok=True)
