"""Training loop, evaluation, comparison and gradient checking"""
