COMMAND_HELP = {
    "describe-timescale": (
        "Summarize a time scale document (bounds, discreteness, kappa-restriction) "
        "and tabulate every grid node with its kind, sigma, rho and graininess. "
        "Writes timescale.json and nodes.csv."
    ),

    "fracint": (
        "Left psi-fractional integral of order --alpha of the requested function, "
        "at every grid node from the origin on. "
        "Writes fracint.csv (t,value) and fracint.json; with --t the JSON also holds the value at t."
    ),

    "fracderiv": (
        "psi-Hilfer derivative of order --alpha and type --beta "
        "(beta 0 is Riemann-Liouville, beta 1 is Caputo). "
        "Nodes outside the kappa-restricted scale are reported as non-finite. "
        "Writes fracderiv.csv (t,value) and fracderiv.json."
    ),

    "solve-ivp": (
        "Picard solver for D^{alpha,beta;psi} y = f(t, y), I^{1-gamma} y(0) = 0 on [0, 1]. "
        "Reports contraction constant, radius rho, residual and convergence. "
        "Writes solution.csv and report.json; exits 3 when the iteration does not converge."
    ),

    "synthesize-control": (
        "Control u steering the IVP solution with gain b_gain to y(1) = y1. "
        "Writes control.csv (t,u) and control_report.json with the terminal error."
    ),

    "verify": (
        "Evaluate every catalog identity on a seeded instance and compare the verdicts "
        "with the expected set. Writes verify_report.json and verify_summary.txt; "
        "exits 3 when a verdict differs."
    ),
}

FLAG_HELP = {
    "input": "JSON input document",
    "out": "directory for the CSV/JSON artifacts",
    "grid_N": "panels per continuous interval",
    "tol": "solver tolerance",
    "seed": "seed for the identity catalog instances",
    "alpha": "override the order alpha of the input document",
    "beta": "override the type beta of the input document",
    "psi": "override psi: name or name:key=value,key=value",
    "t": "evaluation point (must be a grid node)",
    "config": "settings file (default: $FRACTS_CONFIG or config/solver_settings.json)",
}

EPILOG = (
    "Exit codes: 0 success, 2 validation error, 3 numerical failure "
    "(divergence, non-convergence, verdict mismatch), 1 internal error."
)
