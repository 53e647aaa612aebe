#include <iostream>

#include "scpqca/cli.hpp"

int main( int argc, char** argv )
{
  std::vector<std::string> args( argv + 1, argv + argc );
  return scpqca::cli::run( args, std::cout, std::cerr );
}
