"""Published reference values used for comparison columns and the acceptance suite.

All entries are at B = 2.5 T.
"""

# (N_l, M) -> (d in a0, delta_odd, delta_even) for the shifted-Coulomb model
SHIFT_TABLE = {
    (0, 0): (0.104, 0.61, 0.61), (0, 1): (178, 0.25, 0.25), (0, 2): (227, 0.78, 0.78),
    (0, 6): (358, 0.24, 0.24), (1, -1): (178, 0.25, 0.25), (1, 0): (0.3, 0.73, 0.73),
    (1, 1): (238, 0.1, 0.1), (1, 2): (275, 0.65, 0.05), (1, 6): (392, 0.03, 0.03),
    (2, -2): (226, 0.25, 0.75), (2, -1): (237, 0.58, 0.2), (2, 0): (0.7, 0.56, 0.17),
    (2, 1): (285, 0.9, 0.26), (2, 2): (317, 0.75, 0.16), (2, 6): (423, 0.25, 0.64),
    (3, -3): (265, 0.38, 0.81), (3, -2): (275, 0.65, 0.05), (3, -1): (285, 0.89, 0.25),
    (3, 0): (1, 0.48, 0.3), (3, 1): (327, 0.4, 0.45), (3, 2): (355, 0.07, 0.12),
    (3, 6): (452, 0.83, 0.35), (4, -4): (299, 0.27, 0.84), (4, -3): (308, 0.48, 0.12),
    (4, -2): (317, 0.74, 0.3), (4, -1): (327, 0.03, 0.47), (4, 0): (1.2, 0.68, 0.31),
    (4, 1): (364, 0.89, 0.37), (4, 2): (390, 0.48, 0.07), (4, 6): (481, 0.4, 0.87),
    (5, -5): (330, 0.05, 0.6), (5, -4): (338, 0.25, 0.18), (5, -3): (346, 0.46, 0.04),
    (5, -2): (355, 0.67, 0.22), (5, -1): (364, 0.87, 0.41), (5, 0): (1.7, 0.96, 0.47),
    (5, 1): (399, 0.66, 0.24), (5, 2): (422, 0.2, 0.69), (5, 3): (445, 0.67, 0.15),
    (5, 6): (508, 0.03, 0.5),
}

# pi-pi channels of |100,0,0,0>^2: (N_zi, N_zj) -> (C3 GHz um^3, C6 GHz um^6, delta GHz, R_cr um)
PI_PI_CHANNELS = {
    (99, 101): (-4.4, -94.0, -0.21, 2.8),
    (99, 102): (1.8, 0.54, 6.2, 0.67),
    (98, 101): (-0.48, -0.03, -7.2, 0.41),
    (98, 102): (-0.2, -0.05, -0.81, 0.6),
    (98, 103): (-0.12, -0.0025, 5.4, 0.28),
    (97, 103): (-0.04, -0.0011, -1.82, 0.3),
}

# decay budget of |100,0,0,0>: rates in s^-1, lifetimes in s
LIFETIME_100 = {
    "gamma0_C": 2.5, "gamma0_L": 0.87,
    "gamma_bbr": {300.0: 207.0, 70.0: 48.0, 2.0: 0.85},
    "tau": {300.0: 4.8e-3, 70.0: 19.5e-3, 2.0: 237e-3},
}

SHIFT_ANCHORS_MHZ = {2.0: 510.0, 3.0: 118.0}  # |U_t| of |100,0,0,0>^2 at theta = pi/2
RESONANT_C3_100 = 0.275  # GHz um^3, sigma+sigma+ channel of |100,0,0,0>^2
RESONANT_C3_100_M3 = 1.1  # GHz um^3, |100,0,0,3>^2
MEAN_ABS_Z_100 = 24.0  # <|z|>/rc of |100,0,0,0>
DIPOLE_6P_100 = 3.5e-4  # a0, 6P -> |100,0,0,0>
DIPOLE_5P_100 = 1.4e-4  # a0, 5P -> |100,0,0,0>
SCALING_EXPONENTS = {"pi_dipole": 2.0, "defect": -3.0, "c6": 7.0}
