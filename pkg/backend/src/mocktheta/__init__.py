from src.mocktheta.ramanujan import MOCK_THETA, mock, universal_g3

__all__ = ["MOCK_THETA", "mock", "universal_g3"]
