app_name = "qsched"
app_title = "Qsched"
app_description = "Gate scheduling for quantum circuits with precedence constraints"
app_license = "MIT"

# Scheduling methods
# ------------------
# Name used on the command line -> runner taking (circuit, settings) and
# returning (Schedule, details dict). Resolved lazily by qsched.api.get_attr.

schedule_methods = {
    "layered": "qsched.api.schedule.run_layered",
    "greedy": "qsched.api.schedule.run_greedy",
    "exact": "qsched.api.schedule.run_exact",
    "bruteforce": "qsched.api.schedule.run_bruteforce",
    "dispatch": "qsched.api.schedule.run_dispatch",
}

default_schedule_method = "greedy"

# LP export
# ---------

lp_dialects = ["lp_solve", "cplex"]

# Settings
# --------
# A JSON file of Qsched Settings overrides is read from this variable
# unless --settings is given.

settings_env = "QSCHED_SETTINGS"
