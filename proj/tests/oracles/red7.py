from sympy import *
X,Y=symbols('X Y')
a,c1,c2,k1=symbols('a c1 c2 k1',nonzero=True)
F=Function('F')
sol=dsolve(Eq(F(Y).diff(Y),(2*a*F(Y)+c1+c2*k1*Y/2)/(a*Y+c2)),F(Y))
print(sol)
C=symbols('C1')
expr=solve(Eq(sol.rhs,X),C)
print([simplify(e) for e in expr])
