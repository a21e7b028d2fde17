app_name = "apps.oracle"
