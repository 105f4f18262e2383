"""Generate Lanczos coefficients (g = 7, n = 15) by exact interpolation at z = 0..n-1.

Gamma(z+1) = sqrt(2 pi) (z+g+1/2)^(z+1/2) exp(-(z+g+1/2)) * (c0 + sum_k c_k/(z+k))
"""
import mpmath as mp

mp.mp.dps = 60
g = mp.mpf(7)
n = 15


def series_target(z):
    t = z + g + mp.mpf(1) / 2
    return mp.gamma(z + 1) / (mp.sqrt(2 * mp.pi) * t ** (z + mp.mpf(1) / 2) * mp.exp(-t))


rows = []
rhs = []
for j in range(n):
    z = mp.mpf(j)
    rows.append([mp.mpf(1)] + [1 / (z + k) for k in range(1, n)])
    rhs.append(series_target(z))
c = mp.lu_solve(mp.matrix(rows), mp.matrix(rhs))

if __name__ == "__main__":
    for v in c:
        print(mp.nstr(v, 25))
    # error survey
    worst = 0
    for re in [0.5, 1, 2, 5, 10, 30]:
        for im in [0, 0.5, 1, 3, 10, 30, 100, 1000]:
            z = mp.mpc(re, im) - 1
            t = z + g + mp.mpf(1) / 2
            a = c[0] + sum(c[k] / (z + k) for k in range(1, n))
            approx = mp.sqrt(2 * mp.pi) * t ** (z + mp.mpf(1) / 2) * mp.exp(-t) * a
            exact = mp.gamma(z + 1)
            worst = max(worst, abs(approx / exact - 1))
    print("worst rel err", worst)
    print("Gamma(1+i) =", mp.gamma(1 + 1j))
    print("Xi(0) =", mp.re(mp.mpf(1)/2 * (-mp.mpf(1)/4) * mp.pi ** (-mp.mpf(1)/4) * mp.gamma(mp.mpf(1)/4) * mp.zeta(mp.mpf(1)/2)))
