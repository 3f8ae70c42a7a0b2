from lib import *
def red22(K0,K1,C1,C2,C3):
    a=K0-C3*K1
    return (-8*w0*z**3*a**2+2*z**3*K1*(4*C1*K0*C2**2*K1-4*C1*C3*K1)
      +(C1**2+C2**2*w0+8*z**4*a**2+3*z**2*(C2**2*K1+2*C1*a))*w1-C2**2*z*w1**2
      +((-C1**2-C2**2*w0)*z-4*z**5*a**2-2*z**3*(2*C1*K0+C2**2*K1-2*C1*C3*K1))*w2)
Zs=symbols('Zs',positive=True)
for (K0,K1,C1,C2,C3) in [(Rational(1,2),2,3,1,Rational(1,3)),(1,0,1,1,0),(2,1,1,1,0),(1,1,0,1,0),(1,0,0,1,0)]:
    E=exp(t*K1); a=K0-C3*K1
    Xv=x/E**2; Yv=y/E
    zexpr=(4*a**2*Xv+2*a*C2*K1*Yv+2*a*C1+C2**2*K1)/(a*Yv+C2)**2
    uexpr=(-y*K1*(C2**2*y*K1+4*C1*(2*C2*E+y*a))+4*(C2*E+y*a)**2*w0)/(4*C2**2)
    xs=E**2*(z*(a*Yv+C2)**2-2*a*C2*K1*Yv-2*a*C1-C2**2*K1)/(4*a**2)
    res=simplify(resid(zexpr,uexpr,{x:xs}))
    cf=coeffs(numer(together(res)))
    ref=cf.get((0,1))
    print((K0,K1,C1,C2,C3))
    print("  raw", cf.keys()); print("  true :",{m:factor(c/ref) for m,c in cf.items()})
    tg=coeffs(red22(K0,K1,C1,C2,C3)); tr=tg[(0,1)]
    print('  printed:',{m:factor(c/tr) for m,c in tg.items()})
