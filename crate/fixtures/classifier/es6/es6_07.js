import React, { useState } from 'react';
export default function Counter() {
  const [n, setN] = useState(0);
  return n;
}
