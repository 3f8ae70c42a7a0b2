from lib import *
K=symbols('K')
Tt,X=symbols('T X',positive=True)
for K in [Rational(0),Rational(1,2),Rational(2),Rational(-1),Rational(1,21),Rational(-1,15)]:
    s=3*(K-1)/(1+3*K); r=2*(3*K-1)/(3*(1-K))
    T=3*(1-K)*t+2*c3
    res=resid(T*x**s, T**r*w0, {x:(z/T)**(1/s)})
    res=powsimp(powdenest(expand(res),force=True),force=True)
    cf=coeffs(res)
    ref=cf[(0,1)]
    out={m:simplify(powsimp(powdenest(c/ref*(3*z*(K-1)),force=True),force=True)) for m,c in cf.items()}
    print(K,'s=',s,'r=',r, out)
