import os
from typing import Optional
from pydantic_settings import BaseSettings
from pydantic import BaseModel, ConfigDict, Field
from dotenv import load_dotenv

load_dotenv()


class Settings(BaseSettings):
    # Application settings
    app_name: str = Field(default="syzygy-lab", description="Application name")
    app_version: str = Field(default="1.0.0", description="Application version")

    # Worker pool for independent Koszul strands
    threads: int = Field(
        default=int(os.getenv("SYZYGY_THREADS", str(os.cpu_count() or 1))),
        ge=1,
        description="Number of strands ranked concurrently",
        alias="SYZYGY_THREADS",
    )

    def resolve_threads(self, requested: Optional[int] = None) -> int:
        """Thread count for a run: explicit flag wins over the environment"""
        if requested is not None and requested >= 1:
            return requested
        return self.threads

    class Config:
        env_file = ".env"
        case_sensitive = False
        extra = "ignore"  # Ignore extra fields
        populate_by_name = True


class EngineDefaults(BaseModel):
    """Algorithm constants. Not read from the environment."""

    model_config = ConfigDict(frozen=True)

    # Field choice
    prime_floor: int = Field(default=10**6, description="Default primes are the smallest admissible prime above this")

    # Elimination
    dense_fill_threshold: float = Field(default=0.30, gt=0, le=1, description="Active-block density that triggers dense elimination")
    markowitz_cost_limit: int = Field(default=4096, ge=0, description="Cheapest sparse pivot cost above which elimination goes dense")

    # Curve models
    sample_margin: int = Field(default=16, ge=0, description="Extra sample points beyond the zero bound")
    max_redraws: int = Field(default=32, ge=1, description="Attempts before a model construction is reported as failed")

    # Betti windows
    canonical_q_max: int = Field(default=3, description="Rows computed for canonical curves")
    nonspecial_q_max: int = Field(default=2, description="Rows computed for nonspecial embeddings")


# Global settings instance
settings = Settings()
defaults = EngineDefaults()
