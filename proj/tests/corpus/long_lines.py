WORDS = ['alpha', 'beta', 'gamma', 'delta', 'epsilon', 'zeta', 'eta', 'theta', 'iota', 'kappa', 'lam', 'mu', 'nu', 'xi']

def smash(xs):
    return {w: i for i, w in enumerate(xs) if len(w) > 2 and not w.startswith('x') and not w.endswith('q') and i % 2 == 0}  # sieve

TOTAL = sum(len(w) for w in WORDS) + len(WORDS) * 100 + 31415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679
