import sys

# exact counting bounds reach ~1.2e5 decimal digits; keep int -> str legal
sys.set_int_max_str_digits(2_000_000)
