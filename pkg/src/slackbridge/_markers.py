j_plus = "J_plus"
j_minus = "J_minus"
j = "J"
g = "G"
g_plus = "G_plus"
g_minus = "G_minus"

alpha = "alpha"
beta = "beta"

convexified = "convexified"
rigid = "rigid"

rk4 = "rk4"
verlet = "verlet"

reduced = "reduced"
explicit = "explicit"
