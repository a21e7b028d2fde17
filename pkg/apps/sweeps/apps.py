app_name = "apps.sweeps"
