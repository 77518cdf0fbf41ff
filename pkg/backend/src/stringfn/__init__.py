from src.stringfn.hecke_form import (
    gen_euler_check,
    hecke_pair,
    int_level_gen_euler,
    mirror_delta,
    mirror_params,
    periodicity_delta,
    quasi_period_delta,
    reflection_delta,
    shifted_delta,
    string_c,
    string_c_integral,
)
from src.stringfn.kac_peterson import KAC_PETERSON, kac_peterson_form, kac_peterson_normalized
from src.stringfn.params import OffsetSeries, StringParams, integral_shift
from src.stringfn.weyl_kac import weyl_kac_oracle

__all__ = [
    "gen_euler_check", "hecke_pair", "int_level_gen_euler", "mirror_delta", "mirror_params",
    "periodicity_delta", "quasi_period_delta", "reflection_delta", "shifted_delta", "string_c",
    "string_c_integral", "KAC_PETERSON", "kac_peterson_form", "kac_peterson_normalized",
    "OffsetSeries", "StringParams", "integral_shift", "weyl_kac_oracle",
]
