from lib import *
X,Y,U=symbols('X Y U')
a=symbols('a')
K0,K1,C1,C2,C3=symbols('k0 k1 c1 c2 c3')
a=K0-C3*K1
V=lambda F: (2*a*X+C1+C2*K1*Y/2)*diff(F,X)+(a*Y+C2)*diff(F,Y)+(2*a*U-2*K1*C1-C2*K1**2*Y/2)*diff(F,U)
Z=-(4*C1*C2*Y+2*C1*Y**2*a+C2**2*(-4*X+Y**2*K1))/(2*(C2+Y*a))
print('V(Z)=',simplify(V(Z)))
Wf=(4*C2**2*U+Y*K1*(C2**2*Y*K1+4*C1*(2*C2+Y*a)))/(4*(C2+Y*a)**2)
print('V(W)=',simplify(V(Wf)))
