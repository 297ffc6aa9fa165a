#include "dtc/cli.hpp"

#include <iostream>

int main( int argc, char** argv )
{
  return dtc::cli_main( argc, argv, std::cout, std::cerr );
}
