app_name = "apps.coupler"
