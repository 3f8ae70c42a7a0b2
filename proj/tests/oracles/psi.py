from sympy import *
z,w=symbols('z w',positive=True)
p=symbols('p')
k0,c1,c2,c3=symbols('k0 c1 c2 c3')
def cubic(ode):
    # ode in w,p(=w'),q(=w'')
    q=symbols('q')
    e=expand(ode.subs(symbols('wpp'),q))
    a4=e.coeff(q,1); rest=expand(e-a4*q)
    P=Poly(rest,p)
    cs=[simplify(P.coeff_monomial(p**k)/a4) for k in range(4)]
    assert P.degree()<=3
    D,C,B,A=cs
    return A,B,C,D
def psi(A,B,C,D):
    d=diff
    P1=3*d(A,z,2)-2*d(B,z,w)+d(C,w,2)-3*d(C*A,z)+3*d(D*A,w)+d(B**2,z)+3*A*d(D,w)-B*d(C,w)
    P2=3*d(D,w,2)-2*d(C,z,w)+d(B,z,2)-3*d(D*A,z)+3*d(D*B,w)-d(C**2,w)-3*D*d(A,z)+C*d(B,z)
    return simplify(P1),simplify(P2)
q=symbols('wpp')
red21=-w**2+2*(w*z-1)*p-z**2*p**2-(4*z+w*z**2)*q
print('red21',[factor(v) for v in psi(*cubic(red21))])
red27=k0*p+p**2+(w-z*k0)*q
for K in [0,1,-1,Rational(1,2),Rational(-1,2),Rational(1,3)]:
    print('red27',K,psi(*cubic(red27.subs(k0,K))))
def red28a(K):
    s=(6*K+1)/(3*K+2); r=(6*K-2)/(6*K+1)
    return (-r*(-1+2*r)*w**2*z**r*(1+6*K)**2+(-s*(1+s)*z**3*(2+3*K)**2-4*r*w*z**(r+1)*(1+6*K)**2)*p
         -z**(r+2)*(1+6*K)**2*p**2+(-s**2*z**4*(2+3*K)**2-w*z**(r+2)*(1+6*K)**2)*q)
for K in [Rational(1,9),0,1,-1,Rational(1,3),Rational(2,9)]:
    print('red28a',K,[factor(v) for v in psi(*cubic(red28a(K)))])
def red212a(K,sgn):
    s=sgn*3*(K-1)/(1+3*K); r=2*(3*K-1)/(3*(1-K))
    return ((-1-s)*w*z**(1+r)+3*(1+r)*(K-1))*p-s*z**(2+r)*p**2+(-s*w*z**(2+r)+3*z*(K-1))*q
for sgn in [1,-1]:
  for K in [Rational(-1,15),Rational(1,21),0,Rational(1,2),2,-1]:
    print('red212a sgn',sgn,K,[factor(v) for v in psi(*cubic(red212a(K,sgn)))])
