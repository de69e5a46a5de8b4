"""MNIST IDX parsing, synthetic data and minibatching"""
