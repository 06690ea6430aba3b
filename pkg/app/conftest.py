from hypothesis import HealthCheck, settings as hypothesis_settings

from app.settings import get_settings

# closed-form properties run at 1000 generated cases
hypothesis_settings.register_profile("ci", max_examples=1000, deadline=None,
                                     suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
hypothesis_settings.load_profile("ci")

get_settings.cache_clear()
settings = get_settings()
