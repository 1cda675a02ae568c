import os

from dotenv import load_dotenv

load_dotenv()


class Settings:
    PRECISION: int = int(os.getenv("FAREY_FLOW_PRECISION", "113"))
    SEED: int = int(os.getenv("FAREY_FLOW_SEED", "20240101"))
    LOG_LEVEL: str = os.getenv("FAREY_FLOW_LOG_LEVEL", "WARNING")
    MAX_REDUCTION_STEPS: int = int(os.getenv("FAREY_FLOW_MAX_REDUCTION_STEPS", "10000"))
    MAX_PERIOD_SEARCH: int = int(os.getenv("FAREY_FLOW_MAX_PERIOD_SEARCH", "100000"))
    SVG_WIDTH: int = int(os.getenv("FAREY_FLOW_SVG_WIDTH", "1000"))
    SVG_HEIGHT: int = int(os.getenv("FAREY_FLOW_SVG_HEIGHT", "500"))
    SVG_WINDOW: str = os.getenv("FAREY_FLOW_SVG_WINDOW", "-2:3")
    SVG_TOP: float = float(os.getenv("FAREY_FLOW_SVG_TOP", "2.5"))


settings = Settings()
