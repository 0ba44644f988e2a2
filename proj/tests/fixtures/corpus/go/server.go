package server

import "fmt"

// Server answers greeting requests.
type Server struct {
	prefix string
}

// Greet builds a greeting for each name.
func (s *Server) Greet(names []string, loud bool) string {
	out := ""
	for _, n := range names {
		if loud && n != "" {
			out += fmt.Sprintf("%s%s! ", s.prefix, n)
		}
	}
	return out
}

func helper() int { return 42 }
