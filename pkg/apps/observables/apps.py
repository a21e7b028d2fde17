app_name = "apps.observables"
