_base_ = ['rainbow_base.py']

parts = '40,40,40'
densities = 0.5
probabilities = 0.5
trials = 2000
eta = 0.1
workers = 4
