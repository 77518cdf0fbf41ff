from src.hecke.appell import AppellSpec, appell_m, appell_sum
from src.hecke.double_sum import HeckeSpec, hecke_f, hecke_f_naive
from src.hecke.split import SUPPORTED_N, hecke_split, recombine, split_denominator, split_h, split_theta

__all__ = [
    "AppellSpec", "appell_m", "appell_sum", "HeckeSpec", "hecke_f", "hecke_f_naive",
    "SUPPORTED_N", "hecke_split", "recombine", "split_denominator", "split_h", "split_theta",
]
