app_name = "apps.coefficients"
