#include <cardcnf/dimacs.hpp>
#include <cardcnf/verify.hpp>

#include <iostream>

/* Solver contract: DIMACS path in argv[1], status line on stdout, exit 10 (SAT) or 20 (UNSAT). */
int main( int argc, char** argv )
{
  if ( argc != 2 )
  {
    std::cerr << "usage: cardcnf_dpll <file.cnf>\n";
    return 2;
  }
  try
  {
    auto const e = cardcnf::read_dimacs_file( argv[1] );
    auto const r = cardcnf::solve( e.formula );
    std::cout << ( r.sat ? "s SATISFIABLE" : "s UNSATISFIABLE" ) << std::endl;
    return r.sat ? 10 : 20;
  }
  catch ( std::exception const& ex )
  {
    std::cerr << ex.what() << '\n';
    return 1;
  }
}
