from sympy import *
exec(open('red.py').read().split('w0,w1,w2=ws[:3]\n# L2.1')[0])
w0,w1,w2=ws[:3]
x,y,t,z=symbols('x y t z',positive=True)
globals().update(dict(x=x,y=y,t=t,z=z))
import red
def chk(name,zexpr,uexpr,invvar,invexpr,target):
    def D(e,v):
        r=diff(e,v); dz=diff(zexpr,v)
        for k in range(4): r+=diff(e,ws[k])*ws[k+1]*dz
        return r
    u=uexpr
    res=D(D(u,t),x)-D(u*D(u,x),x)-D(D(u,y),y)
    res=res.subs(invvar,invexpr)
    q=simplify(powsimp(powdenest(res/target,force=True),force=True))
    print(name,'ratio',q,'  free',q.free_symbols & {z,w0,w1,w2})
for K in [Rational(1),Rational(1,9),Rational(-1,3),Rational(2,5),Rational(3)]:
    C1,C2=Rational(1,2),Rational(3,7)
    s=(6*K+1)/(3*K+2); r=(6*K-2)/(6*K+1)
    X=(6*K+1)*x+3*C1; Y=(3*K+2)*y+3*C2
    tgt=(-r*(-1+2*r)*w0**2*z**r*(1+6*K)**2+(-s*(1+s)*z**3*(2+3*K)**2-4*r*w0*z**(r+1)*(1+6*K)**2)*w1
         -z**(r+2)*(1+6*K)**2*w1**2+(-s**2*z**4*(2+3*K)**2-w0*z**(r+2)*(1+6*K)**2)*w2)
    chk('L2.8a k0=%s'%K, X/Y**s, X**r*w0, x, (z*Y**s-3*C1)/(6*K+1), tgt)
