from hypothesis import settings

# fixed example streams so numerical property tests are reproducible
settings.register_profile("repro", derandomize=True, print_blob=True)
settings.load_profile("repro")
