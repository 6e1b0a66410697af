/* import x from 'y'; */
function noop() {}
