"""Dense linear algebra and seeded pseudo-randomness"""
