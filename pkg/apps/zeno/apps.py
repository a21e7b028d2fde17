app_name = "apps.zeno"
