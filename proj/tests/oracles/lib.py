from sympy import *
t,x,y,z=symbols('t x y z',positive=True)
k0,k1,c1,c2,c3=symbols('k0 k1 c1 c2 c3')
ws=symbols('w0:6'); w0,w1,w2=ws[:3]
def resid(zexpr,uexpr,subsmap):
    def D(e,v):
        r=diff(e,v); dz=diff(zexpr,v)
        for k in range(5): r+=diff(e,ws[k])*ws[k+1]*dz
        return r
    u=uexpr
    res=D(D(u,t),x)-D(u*D(u,x),x)-D(D(u,y),y)
    return res.subs(subsmap)
def chk(name,zexpr,uexpr,subsmap,target):
    res=resid(zexpr,uexpr,subsmap)
    q=simplify(powsimp(powdenest(res/target,force=True),force=True))
    print(name,'ratio',q,'  jetfree', not (q.free_symbols & {w0,w1,w2}))
def coeffs(e):
    e=expand(e)
    P=Poly(e,w1,w2)
    return {m:factor(c) for m,c in P.terms()}
